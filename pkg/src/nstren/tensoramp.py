"""Two-point amplitudes of the helicity-1 and helicity-2 field strengths.

The helicity-1 amplitude is ``f_{mu nu, rho sigma}(d)`` acting on ``1/x^2``;
the helicity-2 one is the symmetry projection of the single seed term
``G_{bt,sg} d_a d_k d_r d_l [1/x^2]`` onto the Riemann-type index symmetries.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Dict, List, Optional, Tuple

from .algebra import Scalar
from .errors import CancellationFailed, SymmetryInconsistent
from .harmdec import is_harmonic
from .linalg import bareiss_rank
from .poly4 import X2, Poly4, x_lower
from .powerlog import Expr
from .tensors import (DerivPoly, Index, TensorField, TensorSignature, apply_derivative_tensor,
                      derivative, field_strength_pair, metric, riemann_signature)

KERNEL = Expr.power(-1)
MASSIVE_TRACE = Fraction(2, 3)


def maxwell_operator(idx: Index) -> DerivPoly:
    """``g_{mr} d_n d_s - g_{nr} d_m d_s - g_{ms} d_n d_r + g_{ns} d_m d_r``."""
    m, n, r, s = idx
    out = DerivPoly()
    for coef, dd in ((metric(m, r), (n, s)), (-metric(n, r), (m, s)),
                     (-metric(m, s), (n, r)), (metric(n, s), (m, r))):
        if coef:
            out = out + DerivPoly.d(*dd) * coef
    return out


def maxwell_polynomial(idx: Index) -> Poly4:
    """Closed form of the quadratic ``h_{mn,rs}`` with ``f(d)[1/x^2] = h / (x^2)^3``."""
    m, n, r, s = idx
    xl = x_lower
    cross = (xl(n) * xl(s) * metric(m, r) - xl(m) * xl(s) * metric(n, r)
             - xl(n) * xl(r) * metric(m, s) + xl(m) * xl(r) * metric(n, s))
    return (X2 * (metric(m, r) * metric(n, s) - metric(n, r) * metric(m, s)) - cross * 2) * -4


def maxwell_amplitude() -> TensorField:
    # i/(4 pi^2) f(d) 1/x^2 is the extended amplitude; keep the constant aside
    return apply_derivative_tensor(maxwell_operator, field_strength_pair(), KERNEL,
                                   prefactor=Scalar(Fraction(1, 4), 1, -2), name="maxwell")


# helicity 2 ----------------------------------------------------------------------

def g_coefficient(b: int, t: int, s: int, c: int, massive: bool = False) -> Fraction:
    """``(g_bs g_tc + g_bc g_ts - w g_bt g_sc)/8`` with ``w = 1`` (massless) or ``2/3``."""
    w = MASSIVE_TRACE if massive else 1
    return Fraction(metric(b, s) * metric(t, c) + metric(b, c) * metric(t, s)
                    - w * metric(b, t) * metric(s, c), 8)


def quartic_q(a: int, k: int, r: int, l: int) -> Poly4:
    """Harmonic quartic ``q`` with ``d_a d_k d_r d_l [1/x^2] = 8 q / (x^2)^5``."""
    xl = x_lower
    g = metric
    pairs = [((a, k), (r, l)), ((a, r), (k, l)), ((a, l), (k, r)),
             ((k, r), (a, l)), ((k, l), (a, r)), ((r, l), (a, k))]
    six = Poly4()
    for (i, j), (u, v) in pairs:
        if g(i, j):
            six = six + xl(u) * xl(v) * g(i, j)
    ggg = g(a, k) * g(r, l) + g(a, l) * g(k, r) + g(a, r) * g(k, l)
    return xl(a) * xl(k) * xl(r) * xl(l) * 48 + X2 * X2 * ggg - six * X2 * 6


# slots: R_{a b k t} -> 0..3, R_{r s l g} -> 4..7; seed G_{b t, s g} d_a d_k d_r d_l
SEED_G_SLOTS = (1, 3, 5, 7)
SEED_D_SLOTS = (0, 2, 4, 6)


@dataclass(frozen=True)
class FormalTerm:
    """``sign * G_{slots} * d_{slots}`` with slots referring to tensor positions."""

    g_slots: Tuple[int, int, int, int]
    d_slots: Tuple[int, int, int, int]

    @staticmethod
    def make(g_slots, d_slots) -> "FormalTerm":
        # G_{bt,sg} is symmetric within each pair and under pair exchange; derivatives commute
        p1 = tuple(sorted(g_slots[:2]))
        p2 = tuple(sorted(g_slots[2:]))
        a, b = sorted([p1, p2])
        return FormalTerm(a + b, tuple(sorted(d_slots)))


def riemann_formal_terms() -> Dict[FormalTerm, Fraction]:
    """Symmetry projection of the seed, normalized so the seed has coefficient +1."""
    elements = _product_group(riemann_signature())
    acc: Dict[FormalTerm, Fraction] = {}
    for perm, sign in elements:
        # the permuted tuple J has J[i] = I[perm[i]]
        gs = tuple(perm[s] for s in SEED_G_SLOTS)
        ds = tuple(perm[s] for s in SEED_D_SLOTS)
        term = FormalTerm.make(gs, ds)
        acc[term] = acc.get(term, Fraction(0)) + sign
    seed = FormalTerm.make(SEED_G_SLOTS, SEED_D_SLOTS)
    norm = acc[seed]
    return {t: c / norm for t, c in acc.items() if c != 0}


def _product_group(sig: TensorSignature) -> List[Tuple[Tuple[int, ...], int]]:
    out = []
    for (p1, s1), (p2, s2) in product(sig.group.items(), repeat=2):
        out.append((tuple(p1) + tuple(4 + v for v in p2), s1 * s2))
    return out


class RiemannBuilder:
    """Evaluates the projected helicity-2 amplitude at any index tuple."""

    def __init__(self, massive: bool = False):
        self.massive = massive
        self.terms = riemann_formal_terms()
        self._cache: dict = {}

    def direct(self, idx: Index) -> Expr:
        acc = Expr()
        for term, coef in self.terms.items():
            gval = g_coefficient(*(idx[s] for s in term.g_slots), massive=self.massive)
            if gval == 0:
                continue
            exps = [0, 0, 0, 0]
            for s in term.d_slots:
                exps[idx[s]] += 1
            acc = acc + derivative(KERNEL, exps, self._cache) * (coef * gval)
        return acc


def riemann_amplitude(massive: bool = False, verify: bool = True) -> TensorField:
    builder = RiemannBuilder(massive)
    sig = TensorSignature.product(riemann_signature(), riemann_signature())
    comps = {}
    for idx in sig.canonical_tuples():
        val = builder.direct(idx)
        if val:
            comps[idx] = val
    tf = TensorField(sig, comps, Scalar(Fraction(16, 3), 0, 8),
                     name="riemann-massive" if massive else "riemann")
    if verify and not tf.check_symmetry(builder.direct):
        raise SymmetryInconsistent("projected amplitude violates a declared symmetry")
    return tf


def riemann_term_count(massive: bool = False) -> int:
    return len(riemann_formal_terms())


def riemann_independent_components() -> int:
    """Independent components of a linearized Riemann tensor, by exact rank.

    ``R_{abkt} = d_a d_k h_{bt} - d_b d_k h_{at} - d_a d_t h_{bk} + d_b d_t h_{ak}``
    written in the basis of symbols ``(d d)_{(ij)} h_{(uv)}``.
    """
    sym = sorted({tuple(sorted(p)) for p in product(range(4), repeat=2)})
    col = {(p, q): i for i, (p, q) in enumerate(product(sym, sym))}

    def sym_id(a, b, u, v):
        return col[(tuple(sorted((a, b))), tuple(sorted((u, v))))]

    rows = []
    for a, b, k, t in product(range(4), repeat=4):
        row = [0] * len(col)
        for sign, (i, j, u, v) in ((1, (a, k, b, t)), (-1, (b, k, a, t)),
                                   (-1, (a, t, b, k)), (1, (b, t, a, k))):
            row[sym_id(i, j, u, v)] += sign
        rows.append(row)
    return bareiss_rank(rows)


# Proca ----------------------------------------------------------------------------

@dataclass
class DerivTensor:
    """Rank-4 tensor of differential operators with an overall Scalar prefactor."""

    signature: TensorSignature
    components: Dict[Index, DerivPoly]
    prefactor: Scalar

    def component(self, idx: Index) -> DerivPoly:
        c, s = self.signature.canonicalize(idx)
        if s == 0:
            return DerivPoly()
        return self.components.get(c, DerivPoly()) * s


def proca_curl_curl(idx: Index) -> DerivPoly:
    """Curl on both arguments of ``i (g_{nu sigma} + d_nu d_sigma / m^2)``.

    The second field sits at ``x'``, so its derivatives act as ``-d``.
    """
    m, n, r, s = idx
    i_unit = Scalar(1, 1, 0)
    out = DerivPoly()
    for s1, (a0, a1) in ((1, (m, n)), (-1, (n, m))):
        for s2, (b0, b1) in ((1, (r, s)), (-1, (s, r))):
            prop = DerivPoly.d(scalar=i_unit * metric(a1, b1)) if metric(a1, b1) else DerivPoly()
            prop = prop + DerivPoly.d(a1, b1, scalar=i_unit, mpow=-2)
            out = out + DerivPoly.d(a0) * DerivPoly.d(b0) * prop * (-s1 * s2)
    return out


def proca_cancellation() -> DerivTensor:
    """Curl-curl of the Proca two-point operator, checked against ``f(d)``.

    Returns the mass-free sector divided by its single overall scalar, which
    is carried as ``prefactor``; the components then equal ``f(d)`` exactly.
    """
    sig = field_strength_pair()
    survivors = {}
    raw = {}
    for idx in sig.canonical_tuples():
        op = proca_curl_curl(idx)
        heavy = op.sector(-2)
        if not heavy.is_zero:
            survivors[idx] = heavy
        raw[idx] = op.sector(0)
    if survivors:
        raise CancellationFailed(f"{len(survivors)} components keep m^-2 terms", residual=survivors)
    prefactor: Optional[Scalar] = None
    comps = {}
    for idx, op in raw.items():
        f = maxwell_operator(idx)
        if f.is_zero and op.is_zero:
            continue
        if prefactor is None:
            (key, s0), = list(f.terms.items())[:1]
            prefactor = op.terms[key] / s0
        scaled = op * (Scalar(1) / prefactor)
        if scaled != f:
            raise CancellationFailed(f"component {idx} is not {prefactor} * f(d)",
                                     residual={idx: op})
        comps[idx] = scaled
    return DerivTensor(sig, comps, prefactor or Scalar(1))


# checks ---------------------------------------------------------------------------

def quartic_identities_check() -> bool:
    """Exact check of the three d'Alembertian identities on quartics, all index choices."""
    xl = x_lower
    if (X2 * X2).dalembertian() != X2 * 24:
        return False
    for r, l in product(range(4), repeat=2):
        if (xl(r) * xl(l) * X2).dalembertian() != X2 * (2 * metric(r, l)) + xl(r) * xl(l) * 16:
            return False
    for a, k, r, l in product(range(4), repeat=4):
        rhs = Poly4()
        for (i, j), (u, v) in (((a, k), (r, l)), ((a, r), (k, l)), ((a, l), (k, r)),
                               ((k, r), (a, l)), ((k, l), (a, r)), ((r, l), (a, k))):
            rhs = rhs + xl(u) * xl(v) * (2 * metric(i, j))
        if (xl(a) * xl(k) * xl(r) * xl(l)).dalembertian() != rhs:
            return False
    return True


def all_components_harmonic(tf: TensorField) -> bool:
    return all(is_harmonic(t.poly) for e in tf.components.values() for t in e.terms)


def amplitude(helicity: int, massive: bool = False) -> TensorField:
    """Field-strength two-point amplitude for helicity 1 or 2.

    For helicity 1 the massive amplitude has the same operator as the
    massless one (see :func:`proca_cancellation`), so the same tensor is returned.
    """
    if helicity == 1:
        return maxwell_amplitude()
    if helicity == 2:
        return riemann_amplitude(massive)
    raise ValueError("helicity must be 1 or 2")
