"""Polynomials in the Minkowski coordinates x0..x3 with rational coefficients.

Variables are the contravariant components ``x^mu``; the metric is
``diag(+1, -1, -1, -1)`` so ``x^2 = x0^2 - x1^2 - x2^2 - x3^2`` and
``x_mu = g_{mu mu} x^mu``.

Text format: ``3/2*x0^2*x1 - x2^2 + 5`` -- signed terms, each a rational
coefficient times variables ``x0``..``x3`` with optional ``^n`` (``**n``
is accepted on input).  Terms print in graded-lex order.
"""

from __future__ import annotations

import re
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Dict, Iterable, Iterator, List, Mapping, Sequence, Tuple

Exp = Tuple[int, int, int, int]

METRIC: Tuple[int, int, int, int] = (1, -1, -1, -1)
ZERO_EXP: Exp = (0, 0, 0, 0)


def _unit(mu: int) -> Exp:
    e = [0, 0, 0, 0]
    e[mu] = 1
    return tuple(e)


def _add_exp(a: Exp, b: Exp) -> Exp:
    return (a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3])


def graded_lex_key(e: Exp):
    return (-sum(e), tuple(-x for x in e))


def monomials(degree: int) -> List[Exp]:
    """All exponent tuples of total degree ``degree``, in graded-lex order."""
    out = []
    for combo in combinations_with_replacement(range(4), degree):
        e = [0, 0, 0, 0]
        for v in combo:
            e[v] += 1
        out.append(tuple(e))
    return sorted(out, key=graded_lex_key)


class Poly4:
    """Immutable sparse polynomial ``{exponent 4-tuple: Fraction}``."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Exp, object] | Iterable[Tuple[Exp, object]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: Dict[Exp, Fraction] = {}
        for e, c in items:
            e = tuple(int(x) for x in e)
            if len(e) != 4 or min(e) < 0:
                raise ValueError(f"bad exponent tuple {e}")
            acc[e] = acc.get(e, Fraction(0)) + Fraction(c)
        object.__setattr__(self, "_terms", {e: c for e, c in acc.items() if c != 0})
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("Poly4 is immutable")

    # construction -------------------------------------------------------

    @classmethod
    def const(cls, c=1) -> "Poly4":
        return cls({ZERO_EXP: c})

    @classmethod
    def var(cls, mu: int) -> "Poly4":
        """The contravariant coordinate ``x^mu``."""
        return cls({_unit(mu): 1})

    @classmethod
    def lower_var(cls, mu: int) -> "Poly4":
        """The covariant coordinate ``x_mu = g_{mu mu} x^mu``."""
        return cls({_unit(mu): METRIC[mu]})

    @classmethod
    def square(cls) -> "Poly4":
        """Minkowski square ``x^2``."""
        return cls({(2, 0, 0, 0): 1, (0, 2, 0, 0): -1, (0, 0, 2, 0): -1, (0, 0, 0, 2): -1})

    @classmethod
    def euclidean_square(cls) -> "Poly4":
        return cls({(2, 0, 0, 0): 1, (0, 2, 0, 0): 1, (0, 0, 2, 0): 1, (0, 0, 0, 2): 1})

    @classmethod
    def monomial(cls, exp: Sequence[int], c=1) -> "Poly4":
        return cls({tuple(exp): c})

    # container protocol ---------------------------------------------------

    @property
    def terms(self) -> Dict[Exp, Fraction]:
        return dict(self._terms)

    def items(self) -> Iterator[Tuple[Exp, Fraction]]:
        for e in sorted(self._terms, key=graded_lex_key):
            yield e, self._terms[e]

    def coeff(self, exp: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(exp), Fraction(0))

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Poly4.const(other)
        if not isinstance(other, Poly4):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            object.__setattr__(self, "_hash", hash(frozenset(self._terms.items())))
        return self._hash

    # arithmetic -----------------------------------------------------------

    @staticmethod
    def _coerce(other) -> "Poly4":
        if isinstance(other, Poly4):
            return other
        return Poly4.const(other)

    def __add__(self, other) -> "Poly4":
        other = self._coerce(other)
        acc = dict(self._terms)
        for e, c in other._terms.items():
            acc[e] = acc.get(e, 0) + c
        return Poly4(acc)

    __radd__ = __add__

    def __neg__(self) -> "Poly4":
        return Poly4({e: -c for e, c in self._terms.items()})

    def __sub__(self, other) -> "Poly4":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Poly4":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Poly4":
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            if other == 0:
                return Poly4()
            return Poly4({e: c * other for e, c in self._terms.items()})
        other = self._coerce(other)
        acc: Dict[Exp, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = _add_exp(e1, e2)
                acc[e] = acc.get(e, 0) + c1 * c2
        return Poly4(acc)

    __rmul__ = __mul__

    def __truediv__(self, c) -> "Poly4":
        c = Fraction(c)
        return Poly4({e: v / c for e, v in self._terms.items()})

    def __pow__(self, n: int) -> "Poly4":
        out = Poly4.const(1)
        for _ in range(n):
            out = out * self
        return out

    # degree structure -----------------------------------------------------

    @property
    def degrees(self) -> List[int]:
        return sorted({sum(e) for e in self._terms})

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len(self.degrees) <= 1

    def homogeneous_parts(self) -> Dict[int, "Poly4"]:
        parts: Dict[int, Dict[Exp, Fraction]] = {}
        for e, c in self._terms.items():
            parts.setdefault(sum(e), {})[e] = c
        return {d: Poly4(t) for d, t in sorted(parts.items())}

    # calculus -------------------------------------------------------------

    def partial(self, mu: int, variance: str = "lower") -> "Poly4":
        """``d/dx^mu`` (lower) or ``g^{mu nu} d/dx^nu`` (upper)."""
        if variance not in ("lower", "upper"):
            raise ValueError("variance must be 'lower' or 'upper'")
        sign = METRIC[mu] if variance == "upper" else 1
        acc = {}
        for e, c in self._terms.items():
            if e[mu]:
                ne = list(e)
                ne[mu] -= 1
                acc[tuple(ne)] = c * e[mu] * sign
        return Poly4(acc)

    def dalembertian(self) -> "Poly4":
        """``d0^2 - d1^2 - d2^2 - d3^2``."""
        return self._second_order(METRIC)

    def laplacian(self) -> "Poly4":
        """Euclidean Laplacian, used when the variables are read as R^4 coordinates."""
        return self._second_order((1, 1, 1, 1))

    def _second_order(self, signs) -> "Poly4":
        acc: Dict[Exp, Fraction] = {}
        for e, c in self._terms.items():
            for mu in range(4):
                if e[mu] >= 2:
                    ne = list(e)
                    ne[mu] -= 2
                    ne = tuple(ne)
                    acc[ne] = acc.get(ne, 0) + c * e[mu] * (e[mu] - 1) * signs[mu]
        return Poly4(acc)

    def euler_degree(self) -> "Poly4":
        """``x^mu d_mu P``: each monomial is multiplied by its degree."""
        return Poly4({e: c * sum(e) for e, c in self._terms.items()})

    def scale(self, lam) -> "Poly4":
        """Substitute ``x -> lam * x``."""
        lam = Fraction(lam)
        return Poly4({e: c * lam ** sum(e) for e, c in self._terms.items()})

    # division by x^2 --------------------------------------------------------

    def divmod_square(self) -> Tuple["Poly4", "Poly4"]:
        """Return ``(Q, R)`` with ``P = Q*x^2 + R`` and R of degree <= 1 in x0."""
        rem = dict(self._terms)
        quo: Dict[Exp, Fraction] = {}
        while True:
            tops = [e for e in rem if e[0] >= 2]
            if not tops:
                break
            e = max(tops)
            c = rem.pop(e)
            q = (e[0] - 2, e[1], e[2], e[3])
            quo[q] = quo.get(q, 0) + c
            # subtract c * x^q * (x^2 - x0^2) = -c*x^q*(x1^2 + x2^2 + x3^2)
            for mu in (1, 2, 3):
                ne = list(q)
                ne[mu] += 2
                ne = tuple(ne)
                rem[ne] = rem.get(ne, 0) + c
                if rem[ne] == 0:
                    del rem[ne]
        return Poly4(quo), Poly4(rem)

    def extract_square_power(self) -> Tuple[int, "Poly4"]:
        """Largest ``j`` with ``P = (x^2)^j * Q``; returns ``(j, Q)``."""
        if self.is_zero:
            return 0, self
        j, p = 0, self
        while True:
            q, r = p.divmod_square()
            if not r.is_zero:
                return j, p
            j, p = j + 1, q

    # evaluation -------------------------------------------------------------

    def __call__(self, point: Sequence):
        acc = 0
        for e, c in self._terms.items():
            term = c
            for v, k in zip(point, e):
                if k:
                    term = term * v ** k
            acc = acc + term
        return acc

    def coefficient_vector(self, basis: Sequence[Exp]) -> List[Fraction]:
        extra = set(self._terms) - set(basis)
        if extra:
            raise ValueError(f"monomials {sorted(extra)} not in basis")
        return [self._terms.get(e, Fraction(0)) for e in basis]

    # text format --------------------------------------------------------------

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        out = []
        for e, c in self.items():
            factors = [f"x{mu}" if k == 1 else f"x{mu}^{k}" for mu, k in enumerate(e) if k]
            mag = abs(c)
            if factors:
                body = "*".join(([str(mag)] if mag != 1 else []) + factors)
            else:
                body = str(mag)
            sign = "-" if c < 0 else "+"
            out.append((sign, body))
        first_sign, first = out[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in out[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self) -> str:
        return f"Poly4({str(self)!r})"

    @classmethod
    def parse(cls, text: str) -> "Poly4":
        return parse_poly(text)


_TERM_SPLIT = re.compile(r"([+-])")
_VAR = re.compile(r"^x([0-3])(?:\^(\d+))?$")
_NUM = re.compile(r"^(\d+)(?:/(\d+))?$")


def parse_poly(text: str) -> Poly4:
    """Parse the polynomial text format (see module docstring)."""
    s = text.replace(" ", "").replace("**", "^")
    if not s:
        raise ValueError("empty polynomial text")
    pieces = _TERM_SPLIT.split(s)
    acc: Dict[Exp, Fraction] = {}
    sign = 1
    for tok in pieces:
        if tok == "":
            continue
        if tok in "+-":
            sign = -sign if tok == "-" else sign
            continue
        coeff = Fraction(sign)
        e = [0, 0, 0, 0]
        for factor in tok.split("*"):
            m = _NUM.match(factor)
            if m:
                coeff *= Fraction(int(m.group(1)), int(m.group(2) or 1))
                continue
            m = _VAR.match(factor)
            if m:
                e[int(m.group(1))] += int(m.group(2) or 1)
                continue
            raise ValueError(f"cannot parse factor {factor!r} in {text!r}")
        e = tuple(e)
        acc[e] = acc.get(e, 0) + coeff
        sign = 1
    return Poly4(acc)


def x(mu: int) -> Poly4:
    return Poly4.var(mu)


def x_lower(mu: int) -> Poly4:
    return Poly4.lower_var(mu)


def g(mu: int, nu: int) -> int:
    """Minkowski metric component (equal for upper and lower indices)."""
    return METRIC[mu] if mu == nu else 0


X2 = Poly4.square()
