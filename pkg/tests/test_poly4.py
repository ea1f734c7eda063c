from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import assume, given, strategies as st

from nstren.poly4 import X2, Poly4, monomials, parse_poly, x, x_lower

from conftest import SX2, X, homogeneous_polys, polys, sympy_box, to_sympy


def test_monomial_counts():
    for k in range(7):
        assert len(monomials(k)) == (k + 1) * (k + 2) * (k + 3) // 6


def test_square_has_minkowski_signs():
    assert to_sympy(X2) == SX2
    assert to_sympy(Poly4.euclidean_square()) == sum(v ** 2 for v in X)


def test_lowered_coordinates():
    assert x_lower(0) == x(0)
    assert x_lower(2) == -x(2)


@given(polys(), polys())
def test_arithmetic_matches_sympy(p, q):
    assert sp.expand(to_sympy(p * q) - to_sympy(p) * to_sympy(q)) == 0
    assert sp.expand(to_sympy(p - q) - (to_sympy(p) - to_sympy(q))) == 0


@given(polys(), st.integers(0, 3))
def test_partial_matches_sympy(p, mu):
    upper = p.partial(mu, "upper")  # d/dx_mu = g^{mu mu} d/dx^mu
    lower = p.partial(mu, "lower")
    d = sp.diff(to_sympy(p), X[mu])
    assert sp.expand(to_sympy(lower) - d) == 0
    assert sp.expand(to_sympy(upper) - (1 if mu == 0 else -1) * d) == 0


@given(polys())
def test_box_matches_sympy(p):
    assert sp.expand(to_sympy(p.dalembertian()) - sympy_box(to_sympy(p))) == 0


@given(polys(), polys(), st.integers(0, 3))
def test_leibniz(p, q, mu):
    assert (p * q).partial(mu) == p.partial(mu) * q + p * q.partial(mu)


@given(homogeneous_polys())
def test_euler_operator_on_homogeneous(p):
    assert p.euler_degree() == p * p.degree


@given(polys(), st.fractions(min_value=Fraction(1, 5), max_value=5, max_denominator=5))
def test_scale_commutes_with_box(p, lam):
    assert p.scale(lam).dalembertian() == p.dalembertian().scale(lam) * lam ** 2


@given(polys())
def test_text_roundtrip(p):
    assert parse_poly(str(p)) == p


def test_parse_variants():
    assert parse_poly("x0**2 - 1/2*x1^2") == x(0) ** 2 - x(1) ** 2 / 2
    assert str(parse_poly("x1 + 3*x0^2 - 2")) == "3*x0^2 + x1 - 2"
    with pytest.raises(ValueError):
        parse_poly("y0^2")


@given(homogeneous_polys(max_terms=3), st.integers(0, 2))
def test_extract_square_power(p, j):
    assume(not p.is_zero)
    lifted = X2 ** j * p
    n, q = lifted.extract_square_power()
    assert n >= j
    assert X2 ** n * q == lifted
    assert q.divmod_square()[1] != Poly4() or q.is_zero


def test_homogeneous_parts():
    p = x(0) ** 2 + x(1) + 3
    parts = p.homogeneous_parts()
    assert set(parts) == {0, 1, 2}
    assert not p.is_homogeneous()


def test_exact_evaluation():
    p = parse_poly("x0^2*x1 - 1/3*x3")
    assert p([Fraction(1, 2), 2, 0, 3]) == Fraction(1, 2) - 1
