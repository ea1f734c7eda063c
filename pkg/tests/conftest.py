import random
import sys
from fractions import Fraction

import sympy as sp
from hypothesis import settings, strategies as st

from nstren.poly4 import Poly4

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")

X = sp.symbols("x0:4")
SX2 = X[0] ** 2 - X[1] ** 2 - X[2] ** 2 - X[3] ** 2


def to_sympy(p: Poly4):
    out = sp.Integer(0)
    for e, c in p.terms.items():
        term = sp.Rational(c.numerator, c.denominator)
        for v, k in zip(X, e):
            term *= v ** k
        out += term
    return out


def sympy_box(f):
    return sp.diff(f, X[0], 2) - sum(sp.diff(f, v, 2) for v in X[1:])


def random_points(n, seed=0, timelike=None):
    rng = random.Random(seed)
    pts = []
    while len(pts) < n:
        p = [Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(4)]
        s = p[0] ** 2 - p[1] ** 2 - p[2] ** 2 - p[3] ** 2
        if s == 0 or (timelike is True and s < 0) or (timelike is False and s > 0):
            continue
        pts.append(p)
    return pts


exponents = st.tuples(*[st.integers(0, 3)] * 4)
coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@st.composite
def polys(draw, max_terms=4):
    items = draw(st.lists(st.tuples(exponents, coeffs), max_size=max_terms))
    return Poly4(items)


@st.composite
def homogeneous_polys(draw, degree=None, max_terms=4):
    k = draw(st.integers(0, 5)) if degree is None else degree
    from nstren.poly4 import monomials
    mons = monomials(k)
    items = draw(st.lists(st.tuples(st.sampled_from(mons), coeffs), min_size=1, max_size=max_terms))
    return Poly4(items)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
