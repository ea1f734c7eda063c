"""Harmonic decomposition of homogeneous polynomials on Minkowski space.

Every homogeneous ``P`` of degree ``k`` is uniquely ``sum_j (x^2)^j H_{k-2j}``
with each ``H`` annihilated by the d'Alembertian.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import List, Tuple

from .errors import NotHomogeneous
from .linalg import bareiss_rank
from .poly4 import X2, Poly4, monomials


def is_harmonic(p: Poly4) -> bool:
    return p.dalembertian().is_zero


@dataclass(frozen=True)
class HarmonicDecomposition:
    degree: int
    pieces: Tuple[Tuple[int, Poly4], ...]

    def reconstruct(self) -> Poly4:
        acc = Poly4()
        for j, h in self.pieces:
            acc = acc + X2 ** j * h
        return acc

    def to_dict(self, source: Poly4 | None = None) -> dict:
        out = {
            "pieces": [{"j": j, "H": str(h), "harmonic": is_harmonic(h)} for j, h in self.pieces],
        }
        if source is not None:
            out = {"input": str(source), **out, "reconstructed": self.reconstruct() == source}
        return out


def _peel(p: Poly4, k: int) -> dict:
    """Map ``j -> H_{k-2j}`` for homogeneous ``p`` of degree ``k``."""
    q = p.dalembertian()
    if q.is_zero:
        return {0: p}
    lower = _peel(q, k - 2)
    pieces = {}
    for i, g in lower.items():
        j = i + 1
        divisor = 4 * j * (k - j + 1)
        assert divisor != 0, (k, j)
        pieces[j] = g / divisor
    rest = p
    for j, h in pieces.items():
        rest = rest - X2 ** j * h
    pieces[0] = rest
    return pieces


def decompose(p: Poly4) -> HarmonicDecomposition:
    if not p.is_homogeneous():
        raise NotHomogeneous(f"polynomial mixes degrees {p.degrees}")
    if p.is_zero:
        return HarmonicDecomposition(0, ())
    k = p.degree
    pieces = _peel(p, k)
    return HarmonicDecomposition(
        k, tuple((j, h) for j, h in sorted(pieces.items()) if not h.is_zero))


def box_matrix(k: int) -> List[List[int]]:
    """Matrix of the d'Alembertian from degree-k to degree-(k-2) monomials (columns = inputs)."""
    src = monomials(k)
    dst = monomials(k - 2) if k >= 2 else []
    rows = [[0] * len(src) for _ in dst]
    index = {e: i for i, e in enumerate(dst)}
    for col, e in enumerate(src):
        for out_e, c in Poly4.monomial(e).dalembertian().items():
            rows[index[out_e]][col] = c
    return rows


def harmonic_dim(k: int) -> int:
    """Dimension of the harmonic degree-k polynomials, by exact rank of the box map."""
    if k < 0:
        raise ValueError("k must be non-negative")
    n_src = comb(k + 3, 3)
    rows = box_matrix(k)
    return n_src - (bareiss_rank(rows) if rows else 0)


def harmonic_basis(k: int) -> List[Poly4]:
    """A basis of degree-k harmonic polynomials: harmonic projections of the monomials."""
    basis: List[Poly4] = []
    vecs: List[list] = []
    mons = monomials(k)
    for e in mons:
        h = dict(decompose(Poly4.monomial(e)).pieces).get(0)
        if h is None:
            continue
        trial = vecs + [h.coefficient_vector(mons)]
        if bareiss_rank(trial) > len(vecs):
            vecs = trial
            basis.append(h)
    return basis
