"""Euclidean pairings of power-log distributions with Gaussian test functions on R^4.

A test function is ``Q(x) exp(-|x|^2 / sigma^2)`` with ``Q`` a polynomial
(the Poly4 variables read as Euclidean coordinates).  Derivatives of test
functions stay in that class, so integration by parts is done exactly
before any quadrature.  Pairings reduce to one radial integral: monomials
are averaged over the unit 3-sphere in closed form and the remaining
``r``-integral goes to QUADPACK.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy import integrate

from .errors import InconsistentFamily, SingularityTooStrong, ToleranceNotMet
from .poly4 import Poly4
from .powerlog import Expr

SPHERE_AREA = 2 * math.pi ** 2  # |S^3|


def _double_factorial_odd(b: int) -> int:
    """(2b-1)!!"""
    out = 1
    for v in range(1, 2 * b, 2):
        out *= v
    return out


@lru_cache(maxsize=None)
def sphere_average(exp: Tuple[int, int, int, int]) -> Fraction:
    """Mean of ``x^exp`` over the unit sphere S^3 in R^4."""
    if any(e % 2 for e in exp):
        return Fraction(0)
    bs = [e // 2 for e in exp]
    total = sum(bs)
    num = 1
    for b in bs:
        num *= _double_factorial_odd(b)
    return Fraction(num, 2 ** total * math.factorial(total + 1))


def radial_profile(p: Poly4) -> Dict[int, Fraction]:
    """``{d: c}`` with sphere-averaged ``p`` at radius r equal to ``sum c r^d``."""
    out: Dict[int, Fraction] = {}
    for e, c in p.terms.items():
        a = sphere_average(e)
        if a:
            d = sum(e)
            out[d] = out.get(d, Fraction(0)) + c * a
    return {d: c for d, c in out.items() if c}


@dataclass(frozen=True)
class TestFunction:
    """``poly(x) * exp(-|x|^2 / sigma^2)``."""

    poly: Poly4
    sigma: Fraction

    __test__ = False  # not a pytest class

    @classmethod
    def gaussian(cls, sigma=1, poly: Optional[Poly4] = None) -> "TestFunction":
        return cls(poly if poly is not None else Poly4.const(1), Fraction(str(sigma)))

    def at_origin(self) -> Fraction:
        return self.poly.coeff((0, 0, 0, 0))

    def __call__(self, point: Sequence[float]) -> float:
        r2 = sum(float(v) ** 2 for v in point)
        return float(self.poly([float(v) for v in point])) * math.exp(-r2 / float(self.sigma) ** 2)

    def laplacian(self) -> "TestFunction":
        s2 = self.sigma ** 2
        r2 = Poly4.euclidean_square()
        q = self.poly
        new = q.laplacian() - q.euler_degree() * (4 / s2) + q * (r2 * (4 / s2 ** 2) - 8 / s2)
        return TestFunction(new, self.sigma)

    def euler(self) -> "TestFunction":
        """``x . grad`` of the test function."""
        r2 = Poly4.euclidean_square()
        new = self.poly.euler_degree() - self.poly * r2 * (2 / self.sigma ** 2)
        return TestFunction(new, self.sigma)

    def __add__(self, other: "TestFunction") -> "TestFunction":
        if other.sigma != self.sigma:
            raise ValueError("test functions of different widths do not add in this class")
        return TestFunction(self.poly + other.poly, self.sigma)

    def __mul__(self, c) -> "TestFunction":
        return TestFunction(self.poly * Fraction(c), self.sigma)

    __rmul__ = __mul__


@dataclass(frozen=True)
class RadialTerm:
    """``coeff * P(x) * |x|^power * log^logpow(|x|^2 / ell^2)``."""

    coeff: float
    poly: Poly4
    power: int
    logpow: int = 0


@dataclass(frozen=True)
class EuclideanDistribution:
    """Sum of ``c * Lap^n f`` (f a power-log function) and ``c * Lap^n delta`` terms."""

    functions: Tuple[Tuple[float, int, Tuple[RadialTerm, ...]], ...] = ()
    deltas: Tuple[Tuple[float, int], ...] = ()
    ell: float = 1.0
    name: str = ""

    @classmethod
    def power(cls, power: int, coeff: float = 1.0, logpow: int = 0, poly: Optional[Poly4] = None,
              name: str = "") -> "EuclideanDistribution":
        term = RadialTerm(coeff, poly if poly is not None else Poly4.const(1), power, logpow)
        return cls(functions=((1.0, 0, (term,)),), name=name)

    @classmethod
    def from_expr(cls, e: Expr, ell: float = 1.0) -> "EuclideanDistribution":
        """Euclidean reading of an off-origin Expr: ``x^2 -> |x|^2``."""
        terms = []
        for t in e.terms:
            if t.pow.alpha or t.acoeff.degree > 0 or t.scalar.ipow:
                raise ValueError("only real integer-power expressions have a Euclidean reading")
            c = float(t.scalar.q) * math.pi ** t.scalar.pipow
            terms.append(RadialTerm(c, t.poly, 2 * t.pow.n, t.logpow))
        return cls(functions=((1.0, 0, tuple(terms)),), ell=ell)

    def __add__(self, other: "EuclideanDistribution") -> "EuclideanDistribution":
        return EuclideanDistribution(self.functions + other.functions, self.deltas + other.deltas,
                                     self.ell, self.name)

    def __mul__(self, c: float) -> "EuclideanDistribution":
        return EuclideanDistribution(tuple((a * c, n, f) for a, n, f in self.functions),
                                     tuple((a * c, n) for a, n in self.deltas), self.ell, self.name)

    __rmul__ = __mul__

    def laplacian(self, times: int = 1) -> "EuclideanDistribution":
        return EuclideanDistribution(tuple((a, n + times, f) for a, n, f in self.functions),
                                     tuple((a, n + times) for a, n in self.deltas), self.ell, self.name)


def delta(coeff: float = 1.0, laplacians: int = 0) -> EuclideanDistribution:
    return EuclideanDistribution(deltas=((coeff, laplacians),))


@dataclass(frozen=True)
class PairingResult:
    value: float
    quadrature_error_estimate: float
    evaluations: int

    def to_dict(self) -> dict:
        return {"value": self.value, "error_estimate": self.quadrature_error_estimate,
                "evaluations": self.evaluations}


def _radial_integral(terms: Sequence[RadialTerm], phi: TestFunction, ell: float,
                     tol: float) -> PairingResult:
    # integrand r^3 * sum coeff * <P Q>(r) r^power log^j(r^2/ell^2) exp(-r^2/sigma^2)
    pieces: List[Tuple[float, int, int]] = []  # (coefficient, r power, log power)
    for t in terms:
        for d, c in radial_profile(t.poly * phi.poly).items():
            pieces.append((t.coeff * float(c), 3 + d + t.power, t.logpow))
    pieces = [p for p in pieces if p[0] != 0]
    if not pieces:
        return PairingResult(0.0, 0.0, 0)
    lowest = min(p[1] for p in pieces)
    if lowest <= -1:
        raise SingularityTooStrong(f"radial integrand behaves like r^{lowest} at the origin")
    inv_s2 = 1.0 / float(phi.sigma) ** 2
    log_ell2 = 2 * math.log(ell)
    coef = np.array([p[0] for p in pieces])
    pows = np.array([p[1] for p in pieces], dtype=float)
    logs = np.array([p[2] for p in pieces])

    def f(r: float) -> float:
        lg = math.log(r * r) - log_ell2
        return float(np.sum(coef * r ** pows * lg ** logs)) * math.exp(-r * r * inv_s2)

    scale = float(phi.sigma)
    total, err, nev = 0.0, 0.0, 0
    for a, b in ((0.0, scale), (scale, np.inf)):
        val, e, info = integrate.quad(f, a, b, epsabs=tol * 1e-2, epsrel=tol * 1e-2,
                                      limit=400, full_output=1)[:3]
        total += val
        err += e
        nev += info["neval"]
    return PairingResult(SPHERE_AREA * total, SPHERE_AREA * err, nev)


def pair(u: EuclideanDistribution | float, phi: TestFunction, tol: float = 1e-10) -> PairingResult:
    """``<u, phi>`` over R^4."""
    if not isinstance(u, EuclideanDistribution):
        u = EuclideanDistribution.power(0, float(u))
    value, err, nev = 0.0, 0.0, 0
    for coeff, nlap, terms in u.functions:
        psi = phi
        for _ in range(nlap):
            psi = psi.laplacian()
        res = _radial_integral(terms, psi, u.ell, tol)
        value += coeff * res.value
        err += abs(coeff) * res.quadrature_error_estimate
        nev += res.evaluations
    for coeff, nlap in u.deltas:
        psi = phi
        for _ in range(nlap):
            psi = psi.laplacian()
        value += coeff * float(psi.at_origin())
    if err > tol * max(1.0, abs(value)):
        raise ToleranceNotMet(f"quadrature error {err:.3g} above tolerance {tol:.3g}")
    return PairingResult(value, err, nev)


DEFAULT_SIGMAS = (Fraction(7, 10), Fraction(1), Fraction(3, 2))


def default_family(sigmas=DEFAULT_SIGMAS) -> List[TestFunction]:
    x1 = Poly4.var(1)
    fam = [TestFunction.gaussian(s) for s in sigmas]
    fam.append(TestFunction.gaussian(1, Poly4.const(1) + x1 * x1 * 2))
    return fam


@dataclass(frozen=True)
class FamilyFit:
    value: float
    per_function: Tuple[float, ...]
    spread: float

    def to_dict(self) -> dict:
        return {"value": self.value, "per_function": list(self.per_function), "spread": self.spread}


def _map(fn, items) -> List[float]:
    # each pairing owns its quadrature workspace
    with ThreadPoolExecutor(max_workers=min(4, len(items))) as pool:
        return list(pool.map(fn, items))


def _fit(values: Sequence[float], tol: float, what: str) -> FamilyFit:
    c = float(np.mean(values))
    spread = float(max(values) - min(values))
    if spread > 10 * tol * max(1.0, abs(c)):
        raise InconsistentFamily(f"{what} varies across test functions: {list(values)}", values)
    return FamilyFit(c, tuple(values), spread)


def delta_coefficient(u: EuclideanDistribution, phis: Optional[Sequence[TestFunction]] = None,
                      tol: float = 1e-6) -> FamilyFit:
    """Fit ``c`` in ``Lap u = c delta`` from ``<u, Lap phi> = c phi(0)``."""
    phis = list(phis) if phis is not None else default_family()
    if len(phis) < 3:
        raise ValueError("need at least three test functions")
    if any(phi.at_origin() == 0 for phi in phis):
        raise ValueError("test functions must not vanish at the origin")

    def one(phi: TestFunction) -> float:
        return pair(u, phi.laplacian(), tol * 1e-2).value / float(phi.at_origin())

    return _fit(_map(one, phis), tol, "delta coefficient")


def log_homogeneity_defect(u: EuclideanDistribution, phi: TestFunction, degree: int,
                           tol: float = 1e-8) -> float:
    """``-<u, x.grad phi + (4 + degree) phi>``: zero iff u scales exactly with ``degree``."""
    probe = phi.euler() + phi * (4 + degree)
    return -pair(u, probe, tol).value


def defect_per_origin_value(u: EuclideanDistribution, degree: int,
                            phis: Optional[Sequence[TestFunction]] = None,
                            tol: float = 1e-6, laplacians: int = 0) -> FamilyFit:
    """Defect divided by ``(Lap^laplacians phi)(0)``, fitted across a family."""
    phis = list(phis) if phis is not None else default_family()

    def one(phi: TestFunction) -> float:
        ref = phi
        for _ in range(laplacians):
            ref = ref.laplacian()
        return log_homogeneity_defect(u, phi, degree, tol * 1e-2) / float(ref.at_origin())

    return _fit(_map(one, phis), tol, "homogeneity defect")


# named distributions -----------------------------------------------------------------

def r4_extension(delta_coeff: float = math.pi ** 2) -> EuclideanDistribution:
    """``-1/4 Lap(|x|^-2 log(|x|^2/l^2)) + delta_coeff * delta``."""
    base = EuclideanDistribution.power(-2, logpow=1).laplacian() * -0.25
    return EuclideanDistribution(base.functions, ((delta_coeff, 0),), name="r4_ext")


def r6_extension(delta_coeff: float = 0.0) -> EuclideanDistribution:
    """``-1/32 Lap^2(|x|^-2 log(|x|^2/l^2)) + delta_coeff * Lap delta``."""
    base = EuclideanDistribution.power(-2, logpow=1).laplacian(2) * (-1 / 32)
    deltas = ((delta_coeff, 1),) if delta_coeff else ()
    return EuclideanDistribution(base.functions, deltas, name="r6_ext")


NAMED = {
    "one": lambda: EuclideanDistribution.power(0, name="one"),
    "inv_r": lambda: EuclideanDistribution.power(-1, name="inv_r"),
    "inv_r2": lambda: EuclideanDistribution.power(-2, name="inv_r2"),
    "r4_ext": r4_extension,
    "r6_ext": r6_extension,
}

NATURAL_DEGREE = {"one": 0, "inv_r": -1, "inv_r2": -2, "r4_ext": -4, "r6_ext": -6}
