"""The log-modified Riesz family F(x; n) and the massive propagator series.

``F(x; -1) = -1/(4 pi^2 x^2)`` and for ``n >= 0``::

    F(x; n, k) = H_k(x) (-1)^n (x^2)^n / (4^(n+2) pi^2 n! (n+k+1)!)
                 * (log(m^2 x^2/4) - psi(n+2) - psi(n+1) - i pi)

For spacelike ``x`` the log of the negative number ``m^2 x^2/4`` needs a
branch; :data:`DEFAULT_BRANCH` is the one for which
``sum_n m^(2n+2) F(x; n)`` reproduces ``m K1(m r)/(4 pi^2 r)``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Optional, Sequence

from .algebra import Scalar
from .errors import MismatchReport
from .poly4 import Poly4
from .powerlog import Expr, dalembertian_expr, proportionality
from .special import DigammaValue, bessel_K1, digamma_exact


class BranchChoice(enum.Enum):
    """Side from which the negative real axis is approached in ``log(x^2)``."""

    PLUS_I0 = 1    # log(x^2) = log|x^2| + i pi   (principal branch)
    MINUS_I0 = -1  # log(x^2) = log|x^2| - i pi

    def log_negative(self, value: float) -> complex:
        return math.log(-value) + self.value * 1j * math.pi


DEFAULT_BRANCH = BranchChoice.PLUS_I0


@dataclass(frozen=True)
class SpacelikePoint:
    coords: tuple

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(float(c) for c in self.coords))
        if len(self.coords) != 4:
            raise ValueError("need four coordinates")
        if not self.x2 < 0:
            raise ValueError(f"point {self.coords} is not spacelike")

    @classmethod
    def at_radius(cls, r: float) -> "SpacelikePoint":
        return cls((0.0, float(r), 0.0, 0.0))

    @property
    def x2(self) -> float:
        t, a, b, c = self.coords
        return t * t - a * a - b * b - c * c

    @property
    def r(self) -> float:
        return math.sqrt(-self.x2)


@dataclass(frozen=True)
class MassiveTerm:
    """Exact data of one member ``F(x; n, k)``."""

    n: int
    k: int
    prefactor: Scalar
    digamma_shift: Optional[tuple]  # (psi(n+2), psi(n+1)); None for n = -1
    log_argument_scale: str = "m^2/4"

    @property
    def has_log(self) -> bool:
        return self.digamma_shift is not None

    def constant(self) -> DigammaValue:
        """``psi(n+2) + psi(n+1)``."""
        a, b = self.digamma_shift
        return a + b


def massive_term(n: int, k: int = 0) -> MassiveTerm:
    if n < -1:
        raise ValueError("n must be >= -1")
    if n == -1:
        # Riesz member at alpha = -1: e^{i pi} Gamma(1) / (4 pi^2 Gamma(k+1))
        return MassiveTerm(-1, k, Scalar(Fraction(-1, 4 * math.factorial(k)), 0, -2), None)
    q = Fraction((-1) ** n, 4 ** (n + 2) * math.factorial(n) * math.factorial(n + k + 1))
    return MassiveTerm(n, k, Scalar(q, 0, -2), (digamma_exact(n + 1), digamma_exact(n)))


def F_eval(n: int, m: float, x: SpacelikePoint | Sequence[float],
           branch: BranchChoice = DEFAULT_BRANCH, k: int = 0,
           H: Optional[Poly4] = None) -> complex:
    if m <= 0:
        raise ValueError("mass must be positive")
    if not isinstance(x, SpacelikePoint):
        x = SpacelikePoint(tuple(x))
    term = massive_term(n, k)
    hval = float(H(x.coords)) if H is not None else 1.0
    base = complex(term.prefactor) * x.x2 ** n * hval
    if not term.has_log:
        return base
    log = branch.log_negative(m * m * x.x2 / 4)
    return base * (log - float(term.constant()) - 1j * math.pi)


@dataclass(frozen=True)
class SeriesComparison:
    partial_sum: complex
    oracle: float
    ratio: complex
    rel_error_of_modulus: float

    def to_dict(self) -> dict:
        return {
            "partial_sum": [self.partial_sum.real, self.partial_sum.imag],
            "oracle": self.oracle,
            "ratio": [self.ratio.real, self.ratio.imag],
            "modulus_error": self.rel_error_of_modulus,
        }


def series_partial_sum(m: float, x: SpacelikePoint, N: int,
                       branch: BranchChoice = DEFAULT_BRANCH) -> complex:
    return sum(m ** (2 * n + 2) * F_eval(n, m, x, branch) for n in range(-1, N + 1))


def bessel_oracle(m: float, r: float) -> float:
    """``m K1(m r) / (4 pi^2 r)``."""
    return m * bessel_K1(m * r) / (4 * math.pi ** 2 * r)


def series_vs_bessel(m: float, x: SpacelikePoint, N: int,
                     branch: BranchChoice = DEFAULT_BRANCH) -> SeriesComparison:
    if m <= 0:
        raise ValueError("mass must be positive")
    if m * x.r > 2:
        raise ValueError("series comparison is restricted to m*r <= 2")
    if N < 5:
        raise ValueError("need at least 5 terms")
    s = series_partial_sum(m, x, N, branch)
    oracle = bessel_oracle(m, x.r)
    ratio = s / oracle
    return SeriesComparison(s, oracle, ratio, abs(abs(ratio) - 1))


def select_branch(m: float = 1.0, r: float = 0.5, N: int = 20) -> BranchChoice:
    """The branch whose partial sums match the Bessel oracle up to a fixed unit phase."""
    best = None
    for branch in BranchChoice:
        err = series_vs_bessel(m, SpacelikePoint.at_radius(r), N, branch).rel_error_of_modulus
        if best is None or err < best[1]:
            best = (branch, err)
    return best[0]


def nearest_fourth_root(z: complex) -> complex:
    return min((1, 1j, -1, -1j), key=lambda u: abs(z - u))


# symbolic form ---------------------------------------------------------------------

def F_expr(n: int, k: int = 0, H: Optional[Poly4] = None) -> Dict[str, Expr]:
    """``F(x; n, k)`` split into its rational part and its Euler-gamma part.

    The log is ``log(x^2/l^2)`` with ``l = 2/m``; the returned dict maps
    ``"1"`` and ``"euler_gamma"`` to the coefficients of 1 and of gamma.
    """
    H = H if H is not None else Poly4.const(1)
    term = massive_term(n, k)
    pref = term.prefactor
    if not term.has_log:
        return {"1": Expr.power(n, H, scalar=pref), "euler_gamma": Expr()}
    const = term.constant()
    rational = (Expr.power(n, H, logpow=1, scalar=pref)
                + Expr.power(n, H, scalar=pref * (-const.harmonic_part))
                + Expr.power(n, H, scalar=pref * Scalar(-1, 1, 1)))
    gamma_part = Expr.power(n, H, scalar=pref * const.gamma_mult)
    return {"1": rational, "euler_gamma": gamma_part}


def box_F(fx: Dict[str, Expr]) -> Dict[str, Expr]:
    return {key: dalembertian_expr(e) for key, e in fx.items()}


def recursion_residual(n: int, k: int = 0, H: Optional[Poly4] = None) -> Dict[str, Expr]:
    """``box F(n) - F(n-1)``, component by component."""
    lhs = box_F(F_expr(n, k, H))
    rhs = F_expr(n - 1, k, H)
    return {key: lhs[key] - rhs[key] for key in lhs}


def riesz_F_recursion_check(n: int, k: int = 0, H: Optional[Poly4] = None) -> bool:
    """Exact test of ``box F(x; n) = F(x; n-1)`` off the origin."""
    if n < 0:
        raise ValueError("n must be >= 0")
    residual = recursion_residual(n, k, H)
    bad = {key: e for key, e in residual.items() if e}
    if bad:
        raise MismatchReport(f"box F({n}) - F({n - 1}) leaves {sum(len(e) for e in bad.values())}"
                             " nonzero terms", residual=bad)
    return True


def recursion_factor(n: int, k: int = 0, H: Optional[Poly4] = None) -> Optional[Scalar]:
    """Constant ``c`` with ``box F(n) = c F(n-1)`` in every component, or None."""
    lhs = box_F(F_expr(n, k, H))
    rhs = F_expr(n - 1, k, H)
    factor = None
    for key in lhs:
        a, b = lhs[key], rhs[key]
        if not a and not b:
            continue
        if not a or not b or len(a) != len(b):
            return None
        for ta, tb in zip(a.terms, b.terms):
            if (ta.pow, ta.logpow, ta.scalar.unit, ta.acoeff) != (tb.pow, tb.logpow, tb.scalar.unit, tb.acoeff):
                return None
            try:
                c = proportionality(ta.poly, tb.poly)
            except Exception:
                return None
            if factor is None:
                factor = c
            elif c != factor:
                return None
    return Scalar(factor) if factor is not None else None
