"""Exact constants ``q * i**p * pi**r`` and polynomials in the formal symbol alpha."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence, Union

Rational = Union[int, Fraction]


def _frac(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError("floats are not accepted by the exact algebra")
    return Fraction(value)


class Scalar:
    """Exact constant ``q * i**ipow * pi**pipow``.

    Powers of ``i`` are folded into the sign of ``q`` so that ``ipow`` is
    always 0 or 1; a zero ``q`` forces ``ipow = pipow = 0``.
    """

    __slots__ = ("q", "ipow", "pipow")

    def __init__(self, q: Rational = 1, ipow: int = 0, pipow: int = 0):
        q = _frac(q)
        ipow %= 4
        if ipow >= 2:
            q = -q
            ipow -= 2
        if q == 0:
            ipow = pipow = 0
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "ipow", ipow)
        object.__setattr__(self, "pipow", int(pipow))

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    @classmethod
    def i(cls) -> "Scalar":
        return cls(1, 1, 0)

    @classmethod
    def pi(cls) -> "Scalar":
        return cls(1, 0, 1)

    @property
    def is_zero(self) -> bool:
        return self.q == 0

    @property
    def unit(self) -> tuple:
        """The ``(ipow, pipow)`` class; only scalars in one class can be added."""
        return (self.ipow, self.pipow)

    def __mul__(self, other) -> "Scalar":
        if not isinstance(other, Scalar):
            other = Scalar(other)
        return Scalar(self.q * other.q, self.ipow + other.ipow, self.pipow + other.pipow)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Scalar":
        if not isinstance(other, Scalar):
            other = Scalar(other)
        if other.q == 0:
            raise ZeroDivisionError("division by zero scalar")
        # 1/i = -i
        q = self.q / other.q
        if other.ipow:
            q = -q
        return Scalar(q, self.ipow + other.ipow, self.pipow - other.pipow)

    def __neg__(self) -> "Scalar":
        return Scalar(-self.q, self.ipow, self.pipow)

    def __add__(self, other) -> "Scalar":
        if not isinstance(other, Scalar):
            other = Scalar(other)
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        if self.unit != other.unit:
            raise ValueError(f"cannot add scalars of classes {self.unit} and {other.unit}")
        return Scalar(self.q + other.q, self.ipow, self.pipow)

    def __sub__(self, other) -> "Scalar":
        return self + (-other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Scalar):
            try:
                other = Scalar(other)
            except TypeError:
                return NotImplemented
        return (self.q, self.ipow, self.pipow) == (other.q, other.ipow, other.pipow)

    def __hash__(self) -> int:
        return hash((self.q, self.ipow, self.pipow))

    def __complex__(self) -> complex:
        return complex(float(self.q) * math.pi ** self.pipow * (1j if self.ipow else 1))

    def to_complex(self) -> complex:
        return complex(self)

    def to_dict(self) -> dict:
        return {"q": str(self.q), "i": self.ipow, "pi": self.pipow}

    @classmethod
    def from_dict(cls, data: dict) -> "Scalar":
        return cls(Fraction(str(data.get("q", 1))), int(data.get("i", 0)), int(data.get("pi", 0)))

    def __repr__(self) -> str:
        return f"Scalar({self})"

    def __str__(self) -> str:
        parts = [str(self.q)]
        if self.ipow:
            parts.append("i")
        if self.pipow == 1:
            parts.append("pi")
        elif self.pipow:
            parts.append(f"pi^{self.pipow}")
        return "*".join(parts)


class AlphaPoly:
    """Polynomial in the formal symbol alpha with rational coefficients.

    ``coeffs[d]`` multiplies ``alpha**d``; trailing zeros are stripped.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = (1,)):
        cs = [_frac(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("AlphaPoly is immutable")

    @classmethod
    def alpha(cls) -> "AlphaPoly":
        return cls((0, 1))

    @classmethod
    def const(cls, c: Rational) -> "AlphaPoly":
        return cls((c,))

    @classmethod
    def monomial(cls, degree: int, c: Rational = 1) -> "AlphaPoly":
        return cls([0] * degree + [c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def _coerce(self, other) -> "AlphaPoly":
        return other if isinstance(other, AlphaPoly) else AlphaPoly((other,))

    def __add__(self, other) -> "AlphaPoly":
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return AlphaPoly(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self) -> "AlphaPoly":
        return AlphaPoly(-c for c in self.coeffs)

    def __sub__(self, other) -> "AlphaPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "AlphaPoly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "AlphaPoly":
        other = self._coerce(other)
        if self.is_zero or other.is_zero:
            return AlphaPoly(())
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return AlphaPoly(out)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlphaPoly):
            if isinstance(other, (int, Fraction)):
                other = AlphaPoly((other,))
            else:
                return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __call__(self, alpha):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * alpha + c
        return acc

    def to_list(self) -> list:
        return [str(c) for c in self.coeffs]

    def __repr__(self) -> str:
        return f"AlphaPoly({self})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for d, c in reversed(list(enumerate(self.coeffs))):
            if c == 0:
                continue
            if d == 0:
                terms.append(str(c))
            else:
                mono = "a" if d == 1 else f"a^{d}"
                terms.append(mono if c == 1 else f"{c}*{mono}")
        return " + ".join(terms).replace("+ -", "- ")


def alpha_factorized(*roots: Sequence) -> AlphaPoly:
    """``prod(alpha - r)`` for the given rational roots."""
    out = AlphaPoly((1,))
    for r in roots:
        out = out * AlphaPoly((-_frac(r), 1))
    return out
