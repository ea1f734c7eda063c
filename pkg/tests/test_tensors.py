
import pytest
from hypothesis import given, strategies as st

from nstren.errors import SymmetryInconsistent
from nstren.tensors import (DerivPoly, TensorSignature, antisymmetric_pair, field_strength_pair,
                            riemann_signature, swap)

indices4 = st.tuples(*[st.integers(0, 3)] * 4)


def test_swap():
    assert swap(4, (0, 1)) == (1, 0, 2, 3)
    assert swap(4, (0, 2), (1, 3)) == (2, 3, 0, 1)


def test_group_orders():
    assert len(antisymmetric_pair().group) == 2
    assert len(field_strength_pair().group) == 8
    prod = TensorSignature.product(riemann_signature(), riemann_signature())
    assert prod.group is None and prod.rank == 8


def test_inconsistent_signs_detected():
    with pytest.raises(SymmetryInconsistent):
        TensorSignature(2, [(swap(2, (0, 1)), -1), (swap(2, (0, 1)), 1)])


def test_antisymmetric_diagonal_vanishes():
    assert antisymmetric_pair().canonicalize((2, 2)) == ((2, 2), 0)
    assert antisymmetric_pair().canonicalize((3, 1)) == ((1, 3), -1)


def test_orbit_count_of_pair_symmetric_tensor():
    # symmetric square of the 6 antisymmetric pairs: 6*7/2
    assert len(riemann_signature().canonical_tuples()) == 21


@given(indices4)
def test_canonicalize_idempotent(idx):
    sig = field_strength_pair()
    c, s = sig.canonicalize(idx)
    if s:
        assert sig.canonicalize(c) == (c, 1)


@given(indices4)
def test_canonical_sign_consistent_with_generators(idx):
    sig = field_strength_pair()
    c, s = sig.canonicalize(idx)
    for perm, g in sig.generators:
        img = tuple(idx[i] for i in perm)
        c2, s2 = sig.canonicalize(img)
        assert c2 == c
        assert s2 == s * g


def test_product_canonicalizes_factorwise():
    sig = TensorSignature.product(antisymmetric_pair(), antisymmetric_pair())
    assert sig.canonicalize((1, 0, 3, 2)) == ((0, 1, 2, 3), 1)
    assert sig.canonicalize((1, 0, 2, 3)) == ((0, 1, 2, 3), -1)
    assert len(sig.canonical_tuples()) == 36


def test_derivpoly_commutes_and_tracks_mass():
    a = DerivPoly.d(0, 1) * DerivPoly.d(2)
    b = DerivPoly.d(2, 1) * DerivPoly.d(0)
    assert a == b
    heavy = DerivPoly.d(1, mpow=-2) * DerivPoly.d(2, mpow=-2)
    assert heavy.mass_powers == [-4]
    assert (heavy + a).sector(0) == a
