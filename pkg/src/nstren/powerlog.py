"""Off-origin functions ``sum c * alpha^d * (x^2)^p * P(x) * log^j(x^2/l^2)``.

The exponent ``p`` is either an integer or ``alpha + n`` for the formal
symbol alpha.  Expressions are kept in a canonical form: one term per
(scalar class, alpha degree, exponent kind, log power), the rational
part of the scalar folded into the polynomial, and the polynomial freed of
every factor of ``x^2`` (which is moved into the exponent).  Two
expressions are equal iff their canonical forms are.

Terms supported at the origin never enter an :class:`Expr`; formulas that
carry them keep the delta part as :class:`DeltaMetadata`.
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .algebra import AlphaPoly, Scalar
from .errors import IdentityFailed, NotProportional, UnsupportedForm
from .poly4 import X2, Poly4, parse_poly

MAX_LOGPOW = 2


@dataclass(frozen=True, order=True)
class Power:
    """Exponent of ``x^2``: ``n`` or ``alpha + n``."""

    n: int
    alpha: bool = False

    def shift(self, k: int) -> "Power":
        return Power(self.n + k, self.alpha)

    def to_dict(self) -> dict:
        return {"kind": "alpha" if self.alpha else "int", "n": self.n}

    @classmethod
    def from_dict(cls, data: dict) -> "Power":
        kind = data.get("kind", "int")
        if kind not in ("int", "alpha"):
            raise ValueError(f"unknown power kind {kind!r}")
        return cls(int(data["n"]), kind == "alpha")

    def __str__(self) -> str:
        if not self.alpha:
            return str(self.n)
        if self.n == 0:
            return "a"
        return f"a{self.n:+d}"


@dataclass(frozen=True)
class PowerLogTerm:
    scalar: Scalar
    poly: Poly4
    pow: Power = Power(0)
    logpow: int = 0
    acoeff: AlphaPoly = field(default_factory=lambda: AlphaPoly((1,)))

    def __post_init__(self):
        if not 0 <= self.logpow <= MAX_LOGPOW:
            raise UnsupportedForm(f"log power {self.logpow} outside 0..{MAX_LOGPOW}")

    def to_dict(self) -> dict:
        return {
            "scalar": self.scalar.to_dict(),
            "acoeff": self.acoeff.to_list(),
            "pow": self.pow.to_dict(),
            "log": self.logpow,
            "poly": str(self.poly),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "PowerLogTerm":
        return cls(
            scalar=Scalar.from_dict(data.get("scalar", {})),
            poly=parse_poly(str(data.get("poly", "1"))),
            pow=Power.from_dict(data.get("pow", {"kind": "int", "n": 0})),
            logpow=int(data.get("log", 0)),
            acoeff=AlphaPoly(Fraction(str(c)) for c in data.get("acoeff", [1])),
        )


# canonical key: (alpha kind, log power, i power, pi power, alpha degree)
_Key = Tuple[bool, int, int, int, int]


def _combine(a: Tuple[int, Poly4], b: Tuple[int, Poly4]) -> Tuple[int, Poly4]:
    n1, p1 = a
    n2, p2 = b
    n0 = min(n1, n2)
    return n0, p1 * X2 ** (n1 - n0) + p2 * X2 ** (n2 - n0)


class Expr:
    """Canonical finite sum of :class:`PowerLogTerm` values."""

    __slots__ = ("_data",)

    def __init__(self, terms: Iterable[PowerLogTerm] = ()):
        raw: Dict[_Key, Tuple[int, Poly4]] = {}
        for t in terms:
            if t.scalar.is_zero or t.poly.is_zero or t.acoeff.is_zero:
                continue
            for d, c in enumerate(t.acoeff.coeffs):
                if c == 0:
                    continue
                key = (t.pow.alpha, t.logpow, t.scalar.ipow, t.scalar.pipow, d)
                piece = (t.pow.n, t.poly * (t.scalar.q * c))
                raw[key] = _combine(raw[key], piece) if key in raw else piece
        data = {}
        for key, (n, p) in raw.items():
            if p.is_zero:
                continue
            j, q = p.extract_square_power()
            data[key] = (n + j, q)
        object.__setattr__(self, "_data", data)

    def __setattr__(self, name, value):
        raise AttributeError("Expr is immutable")

    @classmethod
    def power(cls, n: int = 0, poly=1, *, alpha: bool = False, logpow: int = 0,
              scalar: Scalar | int | Fraction = 1, acoeff: AlphaPoly | None = None) -> "Expr":
        """Single term ``scalar * acoeff * (x^2)^(n or alpha+n) * poly * log^logpow``."""
        if not isinstance(poly, Poly4):
            poly = Poly4.const(poly)
        if not isinstance(scalar, Scalar):
            scalar = Scalar(scalar)
        return cls([PowerLogTerm(scalar, poly, Power(n, alpha), logpow,
                                 acoeff if acoeff is not None else AlphaPoly((1,)))])

    @property
    def terms(self) -> Tuple[PowerLogTerm, ...]:
        out = []
        for key in sorted(self._data, key=self._order):
            alpha, logpow, ipow, pipow, d = key
            n, p = self._data[key]
            out.append(PowerLogTerm(Scalar(1, ipow, pipow), p, Power(n, alpha), logpow,
                                    AlphaPoly.monomial(d)))
        return tuple(out)

    @staticmethod
    def _order(key):
        alpha, logpow, ipow, pipow, d = key
        return (alpha, -logpow, ipow, pipow, -d)

    def keys(self) -> List[Tuple[Power, int]]:
        """Distinct ``(power, logpow)`` pairs present."""
        return sorted({(Power(n, k[0]), k[1]) for k, (n, _) in self._data.items()})

    @property
    def is_zero(self) -> bool:
        return not self._data

    def __bool__(self) -> bool:
        return bool(self._data)

    def __len__(self) -> int:
        return len(self._data)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Expr):
            return NotImplemented
        return self._data == other._data

    def __hash__(self) -> int:
        return hash(frozenset(self._data.items()))

    # algebra --------------------------------------------------------------

    def __add__(self, other: "Expr") -> "Expr":
        if not isinstance(other, Expr):
            return NotImplemented
        return Expr(self.terms + other.terms)

    def __neg__(self) -> "Expr":
        return self * -1

    def __sub__(self, other: "Expr") -> "Expr":
        return self + (-other)

    def __mul__(self, other) -> "Expr":
        if isinstance(other, (int, Fraction)):
            other = Scalar(other)
        if isinstance(other, Scalar):
            return Expr(PowerLogTerm(t.scalar * other, t.poly, t.pow, t.logpow, t.acoeff)
                        for t in self.terms)
        if isinstance(other, Poly4):
            return Expr(PowerLogTerm(t.scalar, t.poly * other, t.pow, t.logpow, t.acoeff)
                        for t in self.terms)
        if isinstance(other, AlphaPoly):
            return Expr(PowerLogTerm(t.scalar, t.poly, t.pow, t.logpow, t.acoeff * other)
                        for t in self.terms)
        return NotImplemented

    __rmul__ = __mul__

    def shift_power(self, k: int) -> "Expr":
        """Multiply by ``(x^2)^k``."""
        return Expr(PowerLogTerm(t.scalar, t.poly, t.pow.shift(k), t.logpow, t.acoeff)
                    for t in self.terms)

    def canonical(self) -> "Expr":
        return Expr(self.terms)

    # numerics -------------------------------------------------------------

    def exact_values(self, point: Sequence[Fraction]) -> Dict[tuple, Fraction]:
        """Exact value at a rational point, split by ``(ipow, pipow, alpha degree, logpow)``.

        The log and alpha are kept symbolic; only integer exponents are allowed.
        """
        s = X2(point)
        if s == 0:
            raise ValueError("point lies on the light cone")
        out: Dict[tuple, Fraction] = {}
        for (alpha, logpow, ipow, pipow, d), (n, p) in self._data.items():
            if alpha:
                raise UnsupportedForm("exact evaluation needs integer exponents")
            key = (ipow, pipow, d, logpow)
            out[key] = out.get(key, Fraction(0)) + Fraction(s) ** n * p(point)
        return {k: v for k, v in out.items() if v != 0}

    def evaluate(self, point: Sequence[float], alpha: Optional[complex] = None,
                 ell: float = 1.0, i0: int = -1) -> complex:
        """Numeric value at ``point``.

        For ``x^2 < 0`` the log of ``x^2 -/+ i0`` is taken on the side chosen by
        ``i0`` (-1 gives ``log|x^2| - i pi``).
        """
        s = float(X2([float(v) for v in point]))
        if s == 0:
            raise ValueError("point lies on the light cone")
        log_s = math.log(abs(s)) + (0 if s > 0 else i0 * 1j * math.pi)
        log_l = log_s - 2 * math.log(ell)
        total = 0j
        for (a_kind, logpow, ipow, pipow, d), (n, p) in self._data.items():
            if (a_kind or d) and alpha is None:
                raise ValueError("alpha value required")
            expo = n + (alpha if a_kind else 0)
            base = cmath.exp(expo * log_s)
            coef = (1j ** ipow) * math.pi ** pipow * (alpha ** d if d else 1)
            total += coef * base * float(p([float(v) for v in point])) * log_l ** logpow
        return total

    # serialization ----------------------------------------------------------

    def to_json(self) -> list:
        return [t.to_dict() for t in self.terms]

    @classmethod
    def from_json(cls, data: Sequence[dict]) -> "Expr":
        return cls(PowerLogTerm.from_dict(d) for d in data)

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    @classmethod
    def loads(cls, text: str) -> "Expr":
        return cls.from_json(json.loads(text))

    def __str__(self) -> str:
        if not self._data:
            return "0"
        parts = []
        for t in self.terms:
            pre = []
            if t.scalar != Scalar(1):
                pre.append(str(t.scalar))
            if t.acoeff != AlphaPoly((1,)):
                pre.append(f"({t.acoeff})")
            pre.append(f"({t.poly})")
            if t.pow != Power(0):
                pre.append(f"(x^2)^({t.pow})")
            if t.logpow:
                pre.append("L" if t.logpow == 1 else f"L^{t.logpow}")
            parts.append("*".join(pre))
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"Expr({self})"


@dataclass(frozen=True)
class DeltaMetadata:
    """A term supported at the origin, carried beside an off-origin formula."""

    description: str
    coefficient: Scalar
    derivative_order: int


# calculus -------------------------------------------------------------------

def differentiate(e: Expr, mu: int, variance: str = "lower") -> Expr:
    """Exact ``d_mu`` (or ``d^mu``) of an off-origin expression.

    Uses ``d(x^2)^a = 2a x (x^2)^(a-1)`` and ``d log(x^2/l^2) = 2x/x^2``; for
    ``a = alpha + n`` the factor ``2(alpha + n)`` goes into the alpha coefficient.
    """
    xv = Poly4.lower_var(mu) if variance == "lower" else Poly4.var(mu)
    out: List[PowerLogTerm] = []
    for t in e.terms:
        down = t.pow.shift(-1)
        pow_factor = AlphaPoly((2 * t.pow.n, 2 if t.pow.alpha else 0))
        if not pow_factor.is_zero:
            out.append(PowerLogTerm(t.scalar, t.poly * xv, down, t.logpow, t.acoeff * pow_factor))
        if t.logpow:
            out.append(PowerLogTerm(t.scalar * (2 * t.logpow), t.poly * xv, down,
                                    t.logpow - 1, t.acoeff))
        dp = t.poly.partial(mu, variance)
        if not dp.is_zero:
            out.append(PowerLogTerm(t.scalar, dp, t.pow, t.logpow, t.acoeff))
    return Expr(out)


def dalembertian_expr(e: Expr) -> Expr:
    """``box e = d_mu d^mu e`` off the origin."""
    acc = Expr()
    for mu in range(4):
        acc = acc + differentiate(differentiate(e, mu, "lower"), mu, "upper")
    return acc


def box_power(e: Expr, times: int) -> Expr:
    for _ in range(times):
        e = dalembertian_expr(e)
    return e


# scaling --------------------------------------------------------------------

@dataclass(frozen=True)
class ScaledExpr:
    """``e(lam x) = sum over (alpha_factor, t) of lam^(2 alpha [alpha_factor]) (log lam)^t parts``."""

    lam: Fraction
    parts: Dict[Tuple[bool, int], Expr]

    def part(self, alpha_factor: bool = False, t: int = 0) -> Expr:
        return self.parts.get((alpha_factor, t), Expr())


def scale(e: Expr, lam) -> ScaledExpr:
    """Substitute ``x -> lam * x`` (``lam > 0`` rational)."""
    lam = Fraction(lam)
    if lam <= 0:
        raise ValueError("scale factor must be positive")
    buckets: Dict[Tuple[bool, int], List[PowerLogTerm]] = {}
    for t in e.terms:
        factor = lam ** (2 * t.pow.n)
        poly = t.poly.scale(lam) * factor
        for s in range(t.logpow + 1):
            c = comb(t.logpow, s) * 2 ** s
            buckets.setdefault((t.pow.alpha, s), []).append(
                PowerLogTerm(t.scalar * c, poly, t.pow, t.logpow - s, t.acoeff))
    return ScaledExpr(lam, {k: Expr(v) for k, v in buckets.items() if Expr(v)})


# identities ---------------------------------------------------------------------

def proportionality(p: Poly4, h: Poly4) -> Fraction:
    """Rational ``c`` with ``p == c*h``; raises NotProportional otherwise."""
    if h.is_zero:
        raise NotProportional("reference polynomial is zero")
    e, hc = next(h.items())
    c = p.coeff(e) / hc
    if p != h * c:
        raise NotProportional(f"{p} is not a multiple of {h}", residual=p - h * c)
    return c


def verify_pushback(k: int, h: Poly4) -> AlphaPoly:
    """Return ``a(alpha)`` with ``box((x^2)^alpha H) = a(alpha) (x^2)^(alpha-1) H``.

    For harmonic ``H`` of degree ``k`` the result is ``4 alpha (alpha + k + 1)``;
    any other input leaves a remainder and raises :class:`NotProportional`.
    """
    if h.is_zero:
        raise NotProportional("H is zero")
    box = dalembertian_expr(Expr.power(0, h, alpha=True))
    ratio = AlphaPoly(())
    for t in box.terms:
        if not t.pow.alpha or t.logpow or t.scalar.unit != (0, 0) or t.pow.n < -1:
            raise NotProportional(f"term {t} is not of the form (x^2)^(alpha-1) H", residual=box)
        lifted = t.poly * X2 ** (t.pow.n + 1)
        ratio = ratio + t.acoeff * proportionality(lifted, h)
    return ratio


def riesz_normalization_ratio(alpha: float, k: int, box_ratio: AlphaPoly) -> Tuple[complex, complex]:
    """Both sides of the Gamma bookkeeping behind ``box G(a, k) = G(a - 1, k)``.

    The common ``1/pi^2`` is dropped from both sides.
    """
    lhs = (cmath.exp(-1j * math.pi * (alpha - 1)) * math.gamma(1 - alpha)
           / (4 ** (alpha + 1) * math.gamma(alpha + k + 1)))
    rhs = (box_ratio(alpha) * cmath.exp(-1j * math.pi * alpha) * math.gamma(-alpha)
           / (4 ** (alpha + 2) * math.gamma(alpha + k + 2)))
    return lhs, rhs


DEFAULT_ALPHAS = (-3.7, -2.5, -1.3, -0.6, 0.25, 0.7, 1.45, 2.3)


def riesz_shift_check(k: int, h: Poly4, alphas: Sequence[float] = DEFAULT_ALPHAS,
                      rtol: float = 1e-10) -> bool:
    ratio = verify_pushback(k, h)
    expected = 4 * AlphaPoly.alpha() * AlphaPoly((k + 1, 1))
    if ratio != expected:
        raise IdentityFailed(f"box ratio {ratio} differs from {expected}", residual=ratio - expected)
    for a in alphas:
        if float(a).is_integer():
            raise ValueError("sample alphas must be non-integer")
        lhs, rhs = riesz_normalization_ratio(a, k, ratio)
        if abs(lhs - rhs) > rtol * abs(lhs):
            raise IdentityFailed(f"normalization identity fails at alpha={a}: {lhs} vs {rhs}",
                                 residual=a)
    return True


# R_4 extensions of x^-4 and x^-6 ---------------------------------------------------

LOG_KERNEL = Expr.power(-1, logpow=1)

R4_DELTAS = {
    -4: DeltaMetadata("-i pi^2 delta(x)", Scalar(-1, 1, 2), 0),
    -6: DeltaMetadata("-(5 i pi^2/16) box delta(x)", Scalar(Fraction(-5, 16), 1, 2), 2),
}


def check_R4_offorigin(c4=Fraction(-1, 4), c6=Fraction(-1, 32)) -> Tuple[bool, bool]:
    """Do ``c4 box(x^-2 L)`` and ``c6 box^2(x^-2 L)`` equal ``x^-4``, ``x^-6`` off the origin?"""
    once = dalembertian_expr(LOG_KERNEL)
    twice = dalembertian_expr(once)
    return (once * Fraction(c4) == Expr.power(-2), twice * Fraction(c6) == Expr.power(-3))
