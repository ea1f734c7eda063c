from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, strategies as st

from nstren.algebra import AlphaPoly, Scalar
from nstren.errors import IdentityFailed, NotProportional, UnsupportedForm
from nstren.harmdec import harmonic_basis
from nstren.poly4 import X2, Poly4, x
from nstren.powerlog import (LOG_KERNEL, R4_DELTAS, Expr, Power, PowerLogTerm, check_R4_offorigin,
                             dalembertian_expr, differentiate, riesz_normalization_ratio,
                             riesz_shift_check, scale, verify_pushback)

from conftest import SX2, X, homogeneous_polys, random_points, sympy_box, to_sympy

A = sp.Symbol("a")


def sympy_expr(e: Expr):
    out = 0
    for t in e.terms:
        c = sp.Rational(t.scalar.q.numerator, t.scalar.q.denominator) * sp.I ** t.scalar.ipow
        c *= sp.pi ** t.scalar.pipow
        ac = sum(sp.Rational(v.numerator, v.denominator) * A ** i
                 for i, v in enumerate(t.acoeff.coeffs))
        expo = t.pow.n + (A if t.pow.alpha else 0)
        out += c * ac * to_sympy(t.poly) * SX2 ** expo * sp.log(SX2) ** t.logpow
    return out


def numeric(f, point, alpha=None):
    subs = {v: sp.Rational(p.numerator, p.denominator) for v, p in zip(X, point)}
    if alpha is not None:
        subs[A] = alpha
    return complex(sp.N(f.subs(subs), 30))


TIMELIKE = random_points(6, seed=3, timelike=True)

SAMPLES = [
    Expr.power(-1),
    Expr.power(-2, x(0) * x(1)),
    LOG_KERNEL,
    Expr.power(-3, x(2) ** 2 - x(3), logpow=1, scalar=Scalar(Fraction(2, 3), 1, 2)),
    Expr.power(0, x(1), alpha=True),
    Expr.power(1, X2 + x(0), logpow=2),
]


@pytest.mark.parametrize("e", SAMPLES, ids=str)
@pytest.mark.parametrize("mu", range(4))
def test_derivative_matches_sympy(e, mu):
    d = differentiate(e, mu)
    f = sp.diff(sympy_expr(e), X[mu])
    for pt in TIMELIKE[:3]:
        assert d.evaluate(pt, alpha=0.37) == pytest.approx(numeric(f, pt, 0.37), rel=1e-10)


@pytest.mark.parametrize("e", SAMPLES, ids=str)
def test_box_matches_sympy(e):
    b = dalembertian_expr(e)
    f = sympy_box(sympy_expr(e))
    for pt in TIMELIKE:
        assert b.evaluate(pt, alpha=-1.3) == pytest.approx(numeric(f, pt, -1.3), rel=1e-10)


def test_first_derivative_of_inverse_square():
    d = differentiate(Expr.power(-1), 1)
    assert d == Expr.power(-2, x(1) * 2)


def test_box_of_riesz_power():
    # box (x^2)^a = 4a(a+1) (x^2)^(a-1)
    assert verify_pushback(0, Poly4.const(1)) == AlphaPoly((0, 4, 4))


def test_box_kills_inverse_square_off_origin():
    assert not dalembertian_expr(Expr.power(-1))


@given(st.lists(st.integers(-3, 3), min_size=1, max_size=3), st.integers(0, 2))
def test_canonical_form_is_unique(ns, logpow):
    e = sum((Expr.power(n, x(0) ** 2, logpow=logpow) for n in ns), Expr())
    f = sum((Expr.power(n - 1, X2 * x(0) ** 2, logpow=logpow) for n in reversed(ns)), Expr())
    assert e == f
    assert len(e.keys()) == 1


def test_addition_cancels():
    e = Expr.power(-2, x(0))
    assert not (e - e)


def test_exact_values_at_rational_points():
    e = Expr.power(-2, x(0) * x(3), logpow=1, scalar=Scalar(3, 1, 1))
    for pt in random_points(5, seed=1):
        vals = e.exact_values(pt)
        s = pt[0] ** 2 - pt[1] ** 2 - pt[2] ** 2 - pt[3] ** 2
        assert vals == {(1, 1, 0, 1): 3 * pt[0] * pt[3] / s ** 2} or pt[0] * pt[3] == 0


@pytest.mark.parametrize("e", SAMPLES, ids=str)
def test_json_roundtrip(e):
    assert Expr.loads(e.dumps()) == e


def test_json_shape():
    data = Expr.power(-2, alpha=True, logpow=1, scalar=Scalar(Fraction(-1, 4), 1, 2)).to_json()
    # the rational part of the constant lives in the polynomial
    assert data == [{"scalar": {"q": "1", "i": 1, "pi": 2}, "acoeff": ["1"],
                     "pow": {"kind": "alpha", "n": -2}, "log": 1, "poly": "-1/4"}]


def test_scaling_of_log_term():
    # (lam x)^-2 log(lam^2 x^2) = lam^-2 x^-2 (log x^2 + 2 log lam)
    sc = scale(LOG_KERNEL, 3)
    assert sc.part(False, 0) == LOG_KERNEL * Fraction(1, 9)
    assert sc.part(False, 1) == Expr.power(-1) * Fraction(2, 9)


@given(homogeneous_polys(max_terms=3), st.sampled_from([-3, -1, 0, 2]),
       st.fractions(min_value=Fraction(1, 3), max_value=3, max_denominator=3))
def test_scale_commutes_with_box(p, n, lam):
    e = Expr.power(n, p)
    lhs = scale(dalembertian_expr(e), lam).part()
    # box[e(lam x)] = lam^2 (box e)(lam x)
    rhs = dalembertian_expr(scale(e, lam).part()) * (1 / lam ** 2)
    assert lhs == rhs


@pytest.mark.parametrize("k", range(7))
def test_pushback_on_harmonic_basis(k):
    a = AlphaPoly.alpha()
    for h in harmonic_basis(k):
        assert verify_pushback(k, h) == 4 * a * (a + (k + 1))


def test_pushback_rejects_non_harmonic():
    with pytest.raises(NotProportional):
        verify_pushback(2, x(0) ** 2)


@pytest.mark.parametrize("k", [0, 1, 3])
def test_riesz_shift_against_gamma_oracle(k):
    import mpmath as mp
    for a in (-2.5, 0.25, 1.45):
        lhs, rhs = riesz_normalization_ratio(a, k, verify_pushback(k, harmonic_basis(k)[0]))
        oracle = (mp.exp(-1j * mp.pi * (a - 1)) * mp.gamma(1 - a)
                  / (4 ** (a + 1) * mp.gamma(a + k + 1)))
        assert lhs == pytest.approx(complex(oracle), rel=1e-12)
        assert rhs == pytest.approx(complex(oracle), rel=1e-10)
    assert riesz_shift_check(k, harmonic_basis(k)[0])


def test_riesz_shift_rejects_wrong_k():
    with pytest.raises(IdentityFailed):
        riesz_shift_check(1, Poly4.const(1))


def test_R4_identities():
    assert check_R4_offorigin() == (True, True)
    assert check_R4_offorigin(c4=Fraction(-1, 3)) == (False, True)


def test_R4_identities_against_sympy():
    f = SX2 ** -1 * sp.log(SX2)
    once = sp.simplify(-sp.Rational(1, 4) * sympy_box(f) - SX2 ** -2)
    twice = sp.simplify(-sp.Rational(1, 32) * sympy_box(sympy_box(f)) - SX2 ** -3)
    assert once == 0 and twice == 0


def test_delta_metadata_recorded():
    assert R4_DELTAS[-4].coefficient == Scalar(-1, 1, 2)
    assert R4_DELTAS[-6].coefficient == Scalar(Fraction(-5, 16), 1, 2)


def test_logpow_capped():
    with pytest.raises(ValueError):
        PowerLogTerm(Scalar(1), Poly4.const(1), Power(0), 3)


def test_alpha_terms_have_no_exact_values():
    with pytest.raises(UnsupportedForm):
        Expr.power(0, alpha=True).exact_values([1, 0, 0, 0])
