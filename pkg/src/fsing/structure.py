"""Square-free support and variable-disjoint irreducible factorization.

A polynomial is square-free supported when no variable appears with
exponent above one in any support monomial.  Such a polynomial factors,
uniquely up to scalars, into irreducible polynomials on pairwise
disjoint variable sets; the quotient by those factors is then a complete
intersection.  This module computes that factorization and the derived
gcd and irreducibility predicates.

The factorization works in two layers:

1. a coupling heuristic: variables i and j must share a factor whenever
   f * d_i d_j f != (d_i f) * (d_j f); connected components of that
   relation are candidate factor supports, and candidate factors are
   extracted by specializing the complementary variables at a point
   where the cofactor does not vanish, then verified by exact division;
2. an exhaustive bipartition fallback, complete for inputs with at most
   20 variables: every variable split is tried with a deterministic
   0/1 specialization grid.  A nonzero square-free supported polynomial
   cannot vanish on a full 0/1 grid, so the correct split always yields
   a nonvanishing cofactor point.
"""

from __future__ import annotations

import random
from itertools import combinations, product

from .errors import (
    ContextMismatchError,
    DegreeRangeError,
    FsingError,
    NotSquareFreeSupportedError,
    ZeroLeadingError,
    ZeroOrConstantError,
)
from .field import Field, build_field
from .poly import Poly, canon_key, exact_divide

FALLBACK_VAR_LIMIT = 20
SPECIALIZE_TRIALS = 64


def squarefree_offender(f: Poly):
    """First support monomial (canonical order) with an exponent above one."""
    offenders = [e for e in f.terms if any(v > 1 for v in e)]
    if not offenders:
        return None
    return min(offenders, key=canon_key)


def is_squarefree_supported(f: Poly) -> bool:
    return squarefree_offender(f) is None


def support_vars(f: Poly):
    """Support in canonical order plus the set of variable indices used."""
    return f.support(), f.vars_used()


class CIdeal:
    """A complete-intersection presentation by variable-disjoint factors.

    Holds monic irreducible factors with pairwise disjoint variable
    sets, together with the scalar making the product equal the input.
    """

    __slots__ = ("field", "vars", "factors", "varsets", "constant", "used_fallback")

    def __init__(self, field, varctx, factors, constant, used_fallback=False, validate=True):
        self.field = field
        self.vars = varctx
        self.factors = list(factors)
        self.constant = constant
        self.used_fallback = used_fallback
        self.varsets = [g.vars_used() for g in self.factors]
        if validate:
            seen = set()
            for g, vs in zip(self.factors, self.varsets):
                off = squarefree_offender(g)
                if off is not None:
                    raise NotSquareFreeSupportedError(
                        f"factor {g} is not square-free supported", off
                    )
                if g.is_constant():
                    raise ZeroOrConstantError("constant factor in complete intersection")
                if seen & vs:
                    raise FsingError("factor variable sets are not pairwise disjoint")
                seen |= vs

    @classmethod
    def from_factors(cls, factors, check_irreducible=True):
        """Build from explicit factors, normalizing each to be monic."""
        if not factors:
            raise ZeroOrConstantError("no factors given")
        field, varctx = factors[0].field, factors[0].vars
        constant = field.one
        monics = []
        for g in factors:
            if g.field != field or g.vars != varctx:
                raise ContextMismatchError("factors live in different contexts")
            if g.is_zero() or g.is_constant():
                raise ZeroOrConstantError("factors must be nonzero and nonconstant")
            lc = g.terms[g.leading_monomial()]
            constant = field.mul(constant, lc)
            monics.append(g.monic())
        ideal = cls(field, varctx, monics, constant)
        if check_irreducible:
            for g in ideal.factors:
                if not is_irreducible_sqfree(g):
                    raise FsingError(f"factor {g} is not irreducible")
        return ideal

    @property
    def t(self) -> int:
        return len(self.factors)

    def product(self) -> Poly:
        result = Poly.constant(self.field, self.vars, 1)
        for g in self.factors:
            result = result * g
        return result

    def __repr__(self):
        inner = ", ".join(str(g) for g in self.factors)
        return f"CIdeal({inner})"


# --------------------------------------------------------------------------
# coupling heuristic
# --------------------------------------------------------------------------

def _coupling_components(f: Poly):
    """Partition vars(f) so that coupled variables share a block.

    Coupled means f * d_i d_j f != (d_i f)(d_j f), which forces i and j
    into the same irreducible factor; the components therefore refine
    the true factor supports and never merge distinct factors.
    """
    vs = sorted(f.vars_used())
    parent = {i: i for i in vs}

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    partials = {i: f.derivative(i) for i in vs}
    for i, j in combinations(vs, 2):
        if find(i) == find(j):
            continue
        mixed = partials[i].derivative(j)
        if f * mixed != partials[i] * partials[j]:
            parent[find(j)] = find(i)
    blocks = {}
    for i in vs:
        blocks.setdefault(find(i), []).append(i)
    return sorted(blocks.values(), key=lambda b: b[0])


def _random_point(field, rng):
    return field.decode(rng.randrange(field.order))


def _extract_candidate(f: Poly, block, rng):
    """Monic candidate factor supported inside ``block``, or None.

    Specializes the variables outside the block at random points, over
    the base field first and then over quadratic and cubic extensions,
    keeping the first specialization that stays nonconstant.
    """
    outside = sorted(f.vars_used() - set(block))
    if not outside:
        return f.monic()
    levels = [1, 2, 3] if f.field.s == 1 else [1]
    for level in levels:
        if level == 1:
            big = f.field
            lifted = f
        else:
            big = build_field(f.field.p, level)
            lifted = f.embed(big)
        for _ in range(SPECIALIZE_TRIALS):
            assignment = {i: _random_point(big, rng) for i in outside}
            cand = lifted.substitute(assignment)
            if cand.is_zero() or cand.is_constant():
                continue
            cand = cand.monic()
            if level > 1:
                cand = cand.contract(f.field)
                if cand is None:
                    continue
            return cand
    return None


# --------------------------------------------------------------------------
# exhaustive bipartition fallback
# --------------------------------------------------------------------------

def _grid_candidate(f: Poly, block):
    """Deterministic candidate extraction over the 0/1 grid outside ``block``."""
    fld = f.field
    outside = sorted(f.vars_used() - set(block))
    for bits in product((fld.zero, fld.one), repeat=len(outside)):
        assignment = dict(zip(outside, bits))
        cand = f.substitute(assignment)
        if not cand.is_zero() and not cand.is_constant():
            return cand.monic()
    return None


def _bipartition_factors(f: Poly):
    """Complete factorization by trying every variable bipartition."""
    vs = sorted(f.vars_used())
    if len(vs) > FALLBACK_VAR_LIMIT:
        raise FsingError(
            f"exhaustive bipartition fallback is limited to {FALLBACK_VAR_LIMIT} variables"
        )
    if len(vs) <= 1:
        return [f.monic()]
    anchor, rest = vs[0], vs[1:]
    for size in range(0, len(rest)):
        for extra in combinations(rest, size):
            block = {anchor, *extra}
            cand = _grid_candidate(f, block)
            if cand is None or not (cand.vars_used() <= block):
                continue
            cof = exact_divide(f, cand)
            if cof is None or cof.is_constant():
                continue
            return _bipartition_factors(cand) + _bipartition_factors(cof)
    return [f.monic()]


# --------------------------------------------------------------------------
# public entry points
# --------------------------------------------------------------------------

def disjoint_factorization(f: Poly, seed: int = 0) -> CIdeal:
    """Factor a square-free supported polynomial into disjoint irreducibles.

    The result is verified internally: factors are monic, square-free
    supported, on pairwise disjoint variable sets, and their product
    times the recorded constant reproduces the input exactly.
    """
    if f.is_zero() or f.is_constant():
        raise ZeroOrConstantError("factorization needs a nonconstant input")
    off = squarefree_offender(f)
    if off is not None:
        raise NotSquareFreeSupportedError(
            f"input is not square-free supported at {f.vars.monomial_str(off)}", off
        )
    rng = random.Random(seed)
    factors = []
    used_fallback = False
    work = f
    while not work.is_constant():
        blocks = _coupling_components(work)
        if len(blocks) == 1:
            factors.append(work.monic())
            break
        progressed = False
        for block in blocks:
            cand = _extract_candidate(work, block, rng)
            if cand is None:
                continue
            cof = exact_divide(work, cand)
            if cof is None:
                continue
            factors.append(cand)
            work = cof
            progressed = True
            break
        if not progressed:
            used_fallback = True
            factors.extend(_bipartition_factors(work))
            break
    constant = f.terms[f.leading_monomial()]
    factors.sort(key=lambda g: min(g.vars_used()))
    ideal = CIdeal(f.field, f.vars, factors, constant, used_fallback=used_fallback)
    check = ideal.product().scale(constant)
    assert check == f, "factorization failed the re-expansion check"
    return ideal


def is_irreducible_sqfree(f: Poly, seed: int = 0) -> bool:
    """Irreducibility over the coefficient field, via the factor count."""
    return disjoint_factorization(f, seed=seed).t == 1


def degree_one_irreducibility(g: Poly, h: Poly) -> bool:
    """Whether g*x + h is irreducible for a fresh variable x.

    True exactly when the square-free gcd of g and h is constant, the
    content criterion for degree-one polynomials over a UFD.
    """
    if g.is_zero():
        raise ZeroLeadingError("leading coefficient polynomial is zero")
    if h.is_zero():
        return g.is_constant()
    if h.is_constant() or g.is_constant():
        return True
    return gcd_sqfree(g, h).is_constant()


def gcd_sqfree(f: Poly, g: Poly) -> Poly:
    """Monic gcd of two square-free supported polynomials.

    Both inputs factor into distinct irreducibles, so the gcd is the
    product of the factors common to both factorizations.
    """
    f._compat(g)
    if f.is_zero() or g.is_zero():
        raise ZeroOrConstantError("gcd of zero is not supported here")
    if f.is_constant() or g.is_constant():
        return Poly.constant(f.field, f.vars, 1)
    left = disjoint_factorization(f).factors
    right = disjoint_factorization(g).factors
    result = Poly.constant(f.field, f.vars, 1)
    for u in left:
        if any(u == v for v in right):
            result = result * u
    return result


def extension_stability_check(f: Poly, s: int) -> bool:
    """Compare the irreducible factor counts over F_p and F_{p^s}."""
    if not 1 <= s <= 4:
        raise DegreeRangeError(f"extension degree must lie in 1..4, got {s!r}")
    base_count = disjoint_factorization(f).t
    if s == 1:
        return True
    big = build_field(f.field.p, s)
    ext_count = disjoint_factorization(f.embed(big)).t
    return base_count == ext_count
