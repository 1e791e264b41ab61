"""Local numerical invariants at rational points of the zero set.

For a hypersurface, the multiplicity at a point is the order of the
shifted polynomial.  For a complete intersection cut out by
variable-disjoint factors the multiplicities multiply along a tensor
decomposition, so on the additive scale used here the order
contributions of the factors sum.  The defect of the F-pure threshold
then has the closed form mult - t, with dim = n - t and
fpt = dim - dfpt = n - mult.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import PointNotOnVarietyError, ZeroInputError
from .field import build_field
from .frobenius import fpt_oracle
from .poly import Poly
from .structure import CIdeal

SEARCH_BUDGET = 10**7


@dataclass
class InvariantReport:
    """Numerical invariants measured at one rational point."""

    point: tuple
    ord: int
    mult: int
    dim: int
    dfpt: int
    fpt: Fraction
    t: int
    exact: bool | None = None
    budget_exceeded: bool = False


def multiplicity_hypersurface(f: Poly, point) -> int:
    """Order of f at a point of its zero set."""
    if f.is_zero():
        raise ZeroInputError("multiplicity of the zero polynomial")
    if f.evaluate(point) != f.field.zero:
        raise PointNotOnVarietyError(f"point is not on the hypersurface {f}")
    ordv, _ = f.shift(point).order_and_initial()
    return ordv


def dfpt_at(Q: CIdeal, point) -> InvariantReport:
    """Invariant report of the complete intersection at a given point."""
    orders = []
    for g in Q.factors:
        if g.evaluate(point) != Q.field.zero:
            raise PointNotOnVarietyError(
                f"factor {g} does not vanish at the given point"
            )
        ordv, _ = g.shift(point).order_and_initial()
        orders.append(ordv)
    mult = sum(orders)
    t = Q.t
    n = Q.vars.n
    dim = n - t
    dfpt = mult - t
    return InvariantReport(
        point=tuple(point),
        ord=mult,
        mult=mult,
        dim=dim,
        dfpt=dfpt,
        fpt=Fraction(dim - dfpt),
        t=t,
    )


def _points_on_variety(Q: CIdeal, s: int):
    """Rational points of V(Q) over F_{p^s}, in deterministic grid order."""
    if s == 1:
        big = Q.field
        factors = Q.factors
    else:
        big = build_field(Q.field.p, s)
        factors = [g.embed(big) for g in Q.factors]
    n = Q.vars.n
    order = big.order
    for index in range(order**n):
        point = tuple(big.decode((index // order**i) % order) for i in range(n))
        if all(g.evaluate(point) == big.zero for g in factors):
            yield point, factors, big


def global_invariants(Q: CIdeal, s_max: int = 3, budget: int = SEARCH_BUDGET):
    """Maximize the multiplicity over rational points of bounded height.

    Searches the origin plus every point of V(Q) with coordinates in
    F_{p^s} for s <= s_max, skipping any level whose full grid exceeds
    the budget.  The report is exact when every factor is homogeneous
    (the maximum then sits at the origin); otherwise it is a lower
    bound over the searched set.
    """
    best = None
    budget_exceeded = False
    origin = tuple(Q.field.zero for _ in range(Q.vars.n))
    if all(g.evaluate(origin) == Q.field.zero for g in Q.factors):
        best = dfpt_at(Q, origin)
    for s in range(1, s_max + 1):
        grid = (Q.field.p**s) ** Q.vars.n
        if grid > budget:
            budget_exceeded = True
            continue
        for point, factors, big in _points_on_variety(Q, s):
            orders = [g.shift(point).order_and_initial()[0] for g in factors]
            mult = sum(orders)
            if best is None or mult > best.mult:
                t = Q.t
                n = Q.vars.n
                best = InvariantReport(
                    point=point,
                    ord=mult,
                    mult=mult,
                    dim=n - t,
                    dfpt=mult - t,
                    fpt=Fraction(n - mult),
                    t=t,
                )
    if best is None:
        raise PointNotOnVarietyError(
            "no rational point of the zero set found within the search budget"
        )
    best.exact = all(g.total_degree() == g.order_and_initial()[0] for g in Q.factors)
    best.budget_exceeded = budget_exceeded
    return best


def fpt_crosscheck(Q: CIdeal, e_list):
    """Compare oracle threshold samples against the closed form at the origin.

    Returns (sample, discrepancy) pairs with exact rational
    discrepancies lam(e) - (n - mult); the closed form predicts zero.
    """
    origin = tuple(Q.field.zero for _ in range(Q.vars.n))
    report = dfpt_at(Q, origin)
    expected = Fraction(Q.vars.n - report.mult)
    out = []
    for e in e_list:
        sample = fpt_oracle(Q, e)
        if sample is None:
            raise ZeroInputError(
                f"reduced power vanished at e={e}; no threshold sample"
            )
        out.append((sample, sample.lam - expected))
    return out
