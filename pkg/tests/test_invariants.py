"""Multiplicity, defect of the threshold, and global maximizer search."""

from fractions import Fraction
from itertools import product

import pytest

from conftest import mk
from fsing import (
    CIdeal,
    Poly,
    VarCtx,
    build_field,
    dfpt_at,
    fpt_crosscheck,
    global_invariants,
    multiplicity_hypersurface,
)
from fsing.errors import PointNotOnVarietyError, ZeroInputError

F2 = build_field(2)
F3 = build_field(3)
XYZW = VarCtx(("x", "y", "z", "w"))


def quadric(fld=F2):
    return mk(fld, XYZW, {(1, 1, 0, 0): 1, (0, 0, 1, 1): 1})


def exhaustive_max_mult(Q, s):
    """Independent maximizer search: loop the full grid in the test."""
    fld = Q.field if s == 1 else build_field(Q.field.p, s)
    factors = Q.factors if s == 1 else [g.embed(fld) for g in Q.factors]
    best = None
    for point in product(list(fld.elements()), repeat=Q.vars.n):
        if any(g.evaluate(point) != fld.zero for g in factors):
            continue
        mult = sum(g.shift(point).order_and_initial()[0] for g in factors)
        if best is None or mult > best:
            best = mult
    return best


def test_multiplicity_examples():
    f = quadric()
    origin = (F2.zero,) * 4
    assert multiplicity_hypersurface(f, origin) == 2
    off_center = (F2.one, F2.zero, F2.zero, F2.zero)
    assert multiplicity_hypersurface(f, off_center) == 1
    with pytest.raises(PointNotOnVarietyError):
        multiplicity_hypersurface(f, (F2.one, F2.one, F2.zero, F2.zero))
    with pytest.raises(ZeroInputError):
        multiplicity_hypersurface(Poly.zero(F2, XYZW), origin)


def test_dfpt_quadric():
    Q = CIdeal.from_factors([quadric()])
    rep = dfpt_at(Q, (F2.zero,) * 4)
    assert (rep.mult, rep.dim, rep.dfpt, rep.t) == (2, 3, 1, 1)
    assert rep.fpt == Fraction(2)


def test_dfpt_two_factors():
    ctx = VarCtx(("x", "y", "z", "w", "a", "b", "c", "d"))
    g1 = mk(F2, ctx, {(1, 1, 0, 0, 0, 0, 0, 0): 1, (0, 0, 1, 1, 0, 0, 0, 0): 1})
    g2 = mk(F2, ctx, {(0, 0, 0, 0, 1, 1, 0, 0): 1, (0, 0, 0, 0, 0, 0, 1, 1): 1})
    Q = CIdeal.from_factors([g1, g2])
    rep = dfpt_at(Q, (F2.zero,) * 8)
    assert (rep.mult, rep.dim, rep.dfpt, rep.t) == (4, 6, 2, 2)
    assert rep.fpt == Fraction(4)
    # orders add along the factors: both quadrics vanish to order 2
    assert rep.ord == 4


def test_dfpt_smooth_point():
    ctx = VarCtx(("x", "y", "z"))
    Q = CIdeal.from_factors([mk(F2, ctx, {(1, 0, 0): 1, (0, 1, 1): 1})])
    rep = dfpt_at(Q, (F2.zero,) * 3)
    assert (rep.mult, rep.dfpt) == (1, 0)
    assert rep.fpt == Fraction(2)


def test_dfpt_point_off_variety():
    ctx = VarCtx(("x", "y"))
    Q = CIdeal.from_factors(
        [mk(F2, ctx, {(1, 0): 1}), mk(F2, ctx, {(0, 1): 1})]
    )
    with pytest.raises(PointNotOnVarietyError):
        dfpt_at(Q, (F2.zero, F2.one))


def test_global_invariants_matches_exhaustive():
    ctx = VarCtx(("x", "y", "z", "w"))
    f = mk(F2, ctx, {(1, 1, 0, 0): 1, (0, 0, 1, 1): 1, (1, 0, 1, 1): 1})
    Q = CIdeal.from_factors([f])
    rep = global_invariants(Q, s_max=2)
    expected = max(exhaustive_max_mult(Q, 1), exhaustive_max_mult(Q, 2))
    assert rep.mult == expected
    assert rep.dfpt == rep.mult - 1
    assert not rep.budget_exceeded
    # mixed-degree support: the report is flagged as a searched bound
    assert rep.exact is False


def test_global_invariants_homogeneous_exact():
    Q = CIdeal.from_factors([quadric()])
    rep = global_invariants(Q, s_max=1)
    assert rep.exact is True
    assert rep.mult == 2
    assert rep.point == (F2.zero,) * 4


def test_global_invariants_budget_flag():
    Q = CIdeal.from_factors([quadric()])
    rep = global_invariants(Q, s_max=3, budget=10)
    assert rep.budget_exceeded
    assert rep.point == (F2.zero,) * 4  # falls back to the origin report


def test_global_invariants_no_point():
    ctx = VarCtx(("x", "y"))
    # x + 1 has no zero over F_2 and the budget blocks the extensions
    f = mk(F2, ctx, {(1, 0): 1, (0, 0): 1})
    Q = CIdeal(F2, ctx, [f], F2.one)
    with pytest.raises(PointNotOnVarietyError):
        global_invariants(Q, s_max=1, budget=3)


def test_global_invariants_non_homogeneous_agrees_with_exhaustive():
    ctx = VarCtx(("x", "y", "z"))
    f = mk(F3, ctx, {(1, 1, 0): 1, (0, 1, 0): 1, (0, 0, 1): 1})
    Q = CIdeal.from_factors([f])
    rep = global_invariants(Q, s_max=1)
    assert rep.mult == exhaustive_max_mult(Q, 1)


def test_fpt_crosscheck_zero_discrepancy():
    Q = CIdeal.from_factors([quadric()])
    for sample, diff in fpt_crosscheck(Q, (1, 2, 3)):
        assert diff == 0
        assert sample.lam == Fraction(2)
    ctx = VarCtx(("x", "y", "z"))
    Qs = CIdeal.from_factors([mk(F3, ctx, {(1, 0, 0): 1, (0, 1, 1): 1})])
    for sample, diff in fpt_crosscheck(Qs, (1, 2)):
        assert diff == 0
        assert sample.lam == Fraction(2)


def test_fpt_crosscheck_char5_product():
    F5 = build_field(5)
    ctx = VarCtx(("x", "y", "z"))
    Q = CIdeal.from_factors(
        [mk(F5, ctx, {(1, 0, 0): 1}), mk(F5, ctx, {(0, 1, 1): 1, (0, 1, 0): 1, (0, 0, 1): 1})]
    )
    for sample, diff in fpt_crosscheck(Q, (1,)):
        assert diff == 0
