from __future__ import annotations

from fractions import Fraction

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.optimize import linprog

from jacobial import fm

coef = st.integers(-4, 4)
ineq = st.tuples(st.lists(coef, min_size=3, max_size=3), st.integers(-6, 6), st.booleans())


def lp_feasible(cons: list[fm.Ineq], nvars: int) -> bool:
    """Maximize a common slack ``t`` on the strict rows; feasible iff ``t > 0`` is reachable."""
    A, b = [], []
    for c in cons:
        A.append([float(v) for v in c.coeffs] + [1.0 if c.strict else 0.0])
        b.append(float(c.rhs))
    obj = [0.0] * nvars + [-1.0]
    bounds = [(None, None)] * nvars + [(0, 1)]
    res = linprog(obj, A_ub=np.array(A), b_ub=np.array(b), bounds=bounds, method="highs")
    if res.status == 2:
        return False
    assert res.status == 0
    has_strict = any(c.strict for c in cons)
    return (-res.fun > 1e-9) if has_strict else True


@settings(max_examples=300, deadline=None)
@given(st.lists(ineq, min_size=1, max_size=7))
def test_solve_agrees_with_lp(rows):
    cons = [fm.Ineq(tuple(Fraction(v) for v in a), Fraction(r), s) for a, r, s in rows]
    x = fm.solve(cons, 3)
    if x is not None:
        assert all(c.holds(x) for c in cons)
    assert (x is not None) == lp_feasible(cons, 3)


@settings(max_examples=200, deadline=None)
@given(st.lists(ineq, min_size=1, max_size=6), st.lists(coef, min_size=3, max_size=3))
def test_projection_interval(rows, form):
    cons = [fm.Ineq(tuple(Fraction(v) for v in a), Fraction(r), s) for a, r, s in rows]
    b = fm.project(cons, 3, form)
    if b is None:
        assert fm.solve(cons, 3) is None
        return
    # Each simplest value inside the interval is attained by some feasible point.
    v = fm.simplest_in(b)
    pinned = cons + fm.eq(form, v)
    assert fm.solve(pinned, 3) is not None
    # Nothing strictly outside the bounds is attained.
    if b.hi is not None:
        assert fm.solve(cons + [fm.gt(form, b.hi)], 3) is None
    if b.lo is not None:
        assert fm.solve(cons + [fm.lt(form, b.lo)], 3) is None


def test_strictness_is_tracked():
    x_ge_0 = fm.ge([1], 0)
    assert fm.solve([x_ge_0, fm.le([1], 0)], 1) == [Fraction(0)]
    assert fm.solve([fm.gt([1], 0), fm.le([1], 0)], 1) is None
    assert fm.solve([fm.gt([1], 0), fm.lt([1], 1)], 1) == [Fraction(1, 2)]


def test_simplest_rational():
    b = fm.Bounds(Fraction(1, 3), True, Fraction(1, 2), True)
    assert fm.simplest_in(b) == Fraction(2, 5)
    assert fm.simplest_in(fm.Bounds(Fraction(-7, 2), False, None, False)) == -3


def test_empty_bounds():
    assert fm.Bounds(Fraction(1), True, Fraction(1), False).empty()
    assert not fm.Bounds(Fraction(1), False, Fraction(1), False).empty()
    assert fm.Bounds(Fraction(2), False, Fraction(1), False).empty()
