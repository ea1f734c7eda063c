import cmath
import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from nstren.algebra import AlphaPoly, Scalar, alpha_factorized

from conftest import coeffs

scalars = st.builds(Scalar, coeffs, st.integers(0, 7), st.integers(-3, 3))


def test_i_squared_folds_into_sign():
    assert Scalar.i() * Scalar.i() == Scalar(-1)
    assert Scalar(2, 3, 0) == Scalar(-2, 1, 0)


def test_zero_forgets_units():
    assert Scalar(0, 1, 5) == Scalar(0)


def test_addition_requires_same_unit():
    assert Scalar(1, 1, 2) + Scalar(Fraction(1, 2), 1, 2) == Scalar(Fraction(3, 2), 1, 2)
    with pytest.raises(ValueError):
        Scalar(1) + Scalar.pi()


def test_floats_rejected():
    with pytest.raises(TypeError):
        Scalar(0.5)


@given(scalars, scalars)
def test_scalar_product_matches_complex(a, b):
    assert cmath.isclose(complex(a * b), complex(a) * complex(b), rel_tol=1e-12, abs_tol=1e-12)


@given(scalars)
def test_scalar_dict_roundtrip(a):
    assert Scalar.from_dict(a.to_dict()) == a


def test_scalar_division():
    a = Scalar(3, 1, 2)
    assert a / a == Scalar(1)
    assert complex(Scalar(1) / Scalar.i()) == pytest.approx(-1j)


alpha_polys = st.lists(coeffs, max_size=4).map(AlphaPoly)


@given(alpha_polys, alpha_polys, st.floats(-3, 3))
def test_alpha_poly_ring_matches_evaluation(p, q, a):
    assert (p * q)(a) == pytest.approx(p(a) * q(a), abs=1e-9)
    assert (p + q)(a) == pytest.approx(p(a) + q(a), abs=1e-9)


def test_pushback_factor_form():
    a = AlphaPoly.alpha()
    assert alpha_factorized(0, -3) == a * (a + 3)
    assert (4 * a * (a + 3)).to_list() == ["0", "12", "4"]


def test_alpha_poly_degree_and_zero():
    assert AlphaPoly((0, 0)).is_zero
    assert AlphaPoly.monomial(3, 2).degree == 3
    assert math.isclose(AlphaPoly((1, 2, 3))(2.0), 17.0)
