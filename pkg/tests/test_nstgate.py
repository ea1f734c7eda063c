
import pytest
from hypothesis import given, strategies as st

from nstren.errors import UnsupportedForm
from nstren.nstgate import analyze_expr, analyze_term
from nstren.poly4 import x
from nstren.powerlog import Expr


def test_divergence_degree():
    v = analyze_term(2, 0)
    assert (v.D, v.homogeneous_extension, v.naive_divergent) == (0, False, True)


@pytest.mark.parametrize("s", range(1, 11))
@pytest.mark.parametrize("k", range(11))
def test_two_forms_of_the_criterion(s, k):
    assert analyze_term(s, k).homogeneous_extension == (k + 2 > s)


@given(st.integers(1, 30), st.integers(0, 30))
def test_criterion_monotone(s, k):
    v = analyze_term(s, k)
    if v.homogeneous_extension:
        assert analyze_term(s, k + 1).homogeneous_extension
        assert s == 1 or analyze_term(s - 1, k).homogeneous_extension


@given(st.integers(1, 30), st.integers(0, 30))
def test_power_counting_is_weaker(s, k):
    v = analyze_term(s, k)
    if not v.naive_divergent:
        assert v.homogeneous_extension


def test_inverse_fourth_power_needs_renormalization():
    r = analyze_expr(Expr.power(-2))
    assert not r.overall_convergent
    assert r.to_dict()["verdicts"] == [{"k": 0, "s": 2, "D": 0, "naive": "divergent",
                                         "nst": "renormalization required", "unique": False}]


def test_non_harmonic_numerator_split():
    # x0^2 / (x^2)^3 = H_2/(x^2)^3 + (1/4)/(x^2)^2
    r = analyze_expr(Expr.power(-3, x(0) ** 2))
    assert {(v.k, v.s) for v in r.verdicts} == {(2, 3), (0, 2)}
    assert not r.overall_convergent


def test_rejects_log_and_alpha_terms():
    with pytest.raises(UnsupportedForm):
        analyze_expr(Expr.power(-2, logpow=1))
    with pytest.raises(UnsupportedForm):
        analyze_expr(Expr.power(-2, alpha=True))
    with pytest.raises(UnsupportedForm):
        analyze_expr(Expr.power(1))


def test_table_columns():
    table = analyze_expr(Expr.power(-2)).table().splitlines()
    assert table[0].split() == ["k", "s", "D", "naive", "NST", "unique"]
