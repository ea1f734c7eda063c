import random
from fractions import Fraction
from itertools import product

import numpy as np
import pytest
import sympy as sp

from nstren.algebra import Scalar
from nstren.nstgate import analyze_amplitude
from nstren.poly4 import graded_lex_key
from nstren.powerlog import Expr
from nstren.tensoramp import (FormalTerm, KERNEL, RiemannBuilder, all_components_harmonic,
                              g_coefficient, maxwell_amplitude, maxwell_operator,
                              maxwell_polynomial, proca_cancellation, quartic_identities_check,
                              quartic_q, riemann_amplitude, riemann_formal_terms,
                              riemann_independent_components)
from nstren.tensors import derivative, span_rank

from conftest import SX2, X, to_sympy


def float_rank(tf):
    _, polys = tf.polynomials()
    basis = sorted({e for p in polys for e in p.terms}, key=graded_lex_key)
    m = np.array([[float(c) for c in p.coefficient_vector(basis)] for p in polys])
    return int(np.linalg.matrix_rank(m))


@pytest.fixture(scope="module")
def maxwell():
    return maxwell_amplitude()


@pytest.fixture(scope="module")
def riemann():
    return riemann_amplitude()


def test_maxwell_components_match_closed_form(maxwell):
    for idx in product(range(4), repeat=4):
        assert maxwell.component(idx) == Expr.power(-3, maxwell_polynomial(idx))


@pytest.mark.parametrize("idx", [(0, 1, 0, 1), (0, 1, 2, 3), (1, 2, 1, 3), (0, 3, 0, 3)])
def test_maxwell_against_sympy(idx):
    m, n, r, s = idx
    g = [1, -1, -1, -1]
    met = lambda a, b: g[a] if a == b else 0
    f = 1 / SX2
    d = lambda a, b: sp.diff(f, X[a], X[b])
    expect = met(m, r) * d(n, s) - met(n, r) * d(m, s) - met(m, s) * d(n, r) + met(n, s) * d(m, r)
    got = to_sympy(maxwell_polynomial(idx)) / SX2 ** 3
    assert sp.simplify(expect - got) == 0


def test_maxwell_structure(maxwell):
    assert all_components_harmonic(maxwell)
    assert span_rank(maxwell) == 9
    assert float_rank(maxwell) == 9
    assert maxwell.prefactor == Scalar(Fraction(1, 4), 1, -2)


def test_maxwell_verdict(maxwell):
    report = analyze_amplitude(maxwell)
    assert {(v.k, v.s, v.D) for v in report.verdicts} == {(2, 3, 0)}
    assert report.overall_convergent and report.naive_divergent


def test_formal_terms():
    terms = riemann_formal_terms()
    assert len(terms) == 16
    assert set(terms.values()) <= {Fraction(1), Fraction(-1)}
    assert terms[FormalTerm.make((1, 3, 5, 7), (0, 2, 4, 6))] == 1


def test_riemann_structure(riemann):
    assert all_components_harmonic(riemann)
    assert span_rank(riemann) == 25
    assert float_rank(riemann) == 25
    keys = {(t.pow.n, t.logpow) for e in riemann.components.values() for t in e.terms}
    assert keys == {(-5, 0)}


def test_stored_components_match_direct_evaluation(riemann):
    builder = RiemannBuilder()
    rng = random.Random(7)
    for _ in range(40):
        idx = tuple(rng.randrange(4) for _ in range(8))
        assert riemann.component(idx) == builder.direct(idx)


def test_riemann_verdict(riemann):
    report = analyze_amplitude(riemann)
    assert {(v.k, v.s, v.D) for v in report.verdicts} == {(4, 5, 2)}
    assert report.overall_convergent


def test_massive_variant():
    tf = riemann_amplitude(massive=True)
    assert all_components_harmonic(tf)
    assert analyze_amplitude(tf).overall_convergent


def test_helicity_pattern(maxwell, riemann):
    # k = 2h, s = 2h + 1, D = 2h - 2
    for h, tf in ((1, maxwell), (2, riemann)):
        (v,) = analyze_amplitude(tf).distinct()
        assert (v.k, v.s, v.D) == (2 * h, 2 * h + 1, 2 * h - 2)


def test_g_coefficient_trace_weight():
    assert g_coefficient(0, 0, 0, 0) == Fraction(1, 8)
    assert g_coefficient(0, 0, 0, 0, massive=True) == Fraction(4, 3) / 8


def test_linearized_riemann_components():
    # n^2 (n^2 - 1) / 12 for n = 4
    assert riemann_independent_components() == 4 ** 2 * (4 ** 2 - 1) // 12


def test_quartic_identities():
    assert quartic_identities_check()


@pytest.mark.parametrize("idx", [(0, 0, 0, 0), (0, 1, 2, 3), (1, 1, 2, 2), (0, 0, 1, 3)])
def test_fourth_derivative_against_sympy(idx):
    f = sp.diff(1 / SX2, *(X[i] for i in idx))
    assert sp.simplify(f - 8 * to_sympy(quartic_q(*idx)) / SX2 ** 5) == 0


def test_fourth_derivative_all_indices():
    cache = {}
    for idx in product(range(4), repeat=4):
        exps = [0] * 4
        for i in idx:
            exps[i] += 1
        assert derivative(KERNEL, exps, cache) == Expr.power(-5, quartic_q(*idx) * 8)


def test_proca_mass_terms_cancel():
    out = proca_cancellation()
    assert out.prefactor == Scalar(-1, 1, 0)
    for idx, op in out.components.items():
        assert op == maxwell_operator(idx)
    assert len(out.components) == sum(1 for i in out.signature.canonical_tuples()
                                      if not maxwell_operator(i).is_zero)
