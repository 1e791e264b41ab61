"""Randomized theorem checking and the modification construction.

The suite draws seeded random square-free supported polynomials with a
planted number of variable-disjoint irreducible factors, then runs the
whole verification chain on each: factorization, splitting witness,
regularity certificate, invariant report at the origin, and exact
threshold crosschecks.  Any failure is minimized by greedy single
removals (drop a term, or set a variable to one) before being reported.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import combinations

from .errors import (
    BudgetExceededError,
    CertificateSearchExhausted,
    FsingError,
    HypothesisViolatedError,
)
from .field import Field, build_field
from .frobenius import (
    build_regularity_certificate,
    fedder_fsplit,
    fpt_sample_poly,
    verify_regularity_certificate,
)
from .invariants import SEARCH_BUDGET, dfpt_at, fpt_crosscheck
from .poly import Poly, VarCtx, exact_divide
from .structure import (
    CIdeal,
    disjoint_factorization,
    is_irreducible_sqfree,
    squarefree_offender,
)

REJECTION_CAP = 10**4


# --------------------------------------------------------------------------
# random generation
# --------------------------------------------------------------------------

def _random_factor(field, varctx, block, m, rng):
    """Random irreducible square-free supported polynomial on the block."""
    subsets = []
    for size in range(1, len(block) + 1):
        subsets.extend(combinations(block, size))
    m = min(m, len(subsets))
    if m == 1:
        return Poly.variable(field, varctx, rng.choice(sorted(block)))
    for _ in range(REJECTION_CAP):
        chosen = rng.sample(subsets, m)
        terms = {}
        for sub in chosen:
            exps = tuple(1 if i in sub else 0 for i in range(varctx.n))
            terms[exps] = field.decode(rng.randrange(1, field.order))
        cand = Poly(field, varctx, terms)
        if is_irreducible_sqfree(cand):
            return cand
    raise BudgetExceededError(
        f"no irreducible factor found in {REJECTION_CAP} rejection trials"
    )


def random_sqfree(field: Field, n: int, max_terms: int, t: int, seed: int = 0) -> Poly:
    """Seeded random product of t variable-disjoint irreducible factors.

    Every support monomial has positive degree, so the result vanishes
    at the origin.  Raises ValueError when t factors cannot fit in n
    variables and BudgetExceededError when rejection sampling stalls.
    """
    if t < 1:
        raise ValueError("factor count must be positive")
    if t > n:
        raise ValueError(f"cannot place {t} disjoint nonempty blocks in {n} variables")
    rng = random.Random(seed)
    varctx = VarCtx(tuple(f"x{i + 1}" for i in range(n)))
    order = list(range(n))
    rng.shuffle(order)
    cuts = sorted(rng.sample(range(1, n), t - 1)) if t > 1 else []
    blocks = []
    prev = 0
    for cut in cuts + [n]:
        blocks.append(order[prev:cut])
        prev = cut
    factors = []
    terms_used = 1
    for block in blocks:
        room = max(1, max_terms // terms_used)
        m = rng.randint(1, room)
        fac = _random_factor(field, varctx, block, m, rng)
        terms_used *= len(fac.terms)
        factors.append(fac)
    result = Poly.constant(field, varctx, 1)
    for fac in factors:
        result = result * fac
    return result


# --------------------------------------------------------------------------
# one-sample verification chain
# --------------------------------------------------------------------------

def check_sqfree_sample(f: Poly, t_planted=None, e_max: int = 2, fpt_es=(1, 2)) -> dict:
    """Run the full chain on one square-free supported polynomial.

    Returns a record with ok/failure plus the artifacts produced along
    the way; never raises for a theory failure, so the caller can
    minimize and report.
    """
    rec = {"poly": str(f), "ok": True, "failure": None}

    def fail(reason):
        rec["ok"] = False
        rec["failure"] = reason
        return rec

    try:
        Q = disjoint_factorization(f)
    except FsingError as exc:
        return fail(f"factorization error: {exc}")
    rec["t"] = Q.t
    rec["factors"] = [str(g) for g in Q.factors]
    if t_planted is not None and Q.t != t_planted:
        return fail(f"recovered {Q.t} factors, planted {t_planted}")
    w = fedder_fsplit(Q, 1)
    if w is None:
        return fail("no splitting witness at e=1")
    rec["witness"] = Q.vars.monomial_str(w.witness)
    try:
        cert = build_regularity_certificate(Q, e_max)
    except CertificateSearchExhausted as exc:
        return fail(f"certificate search exhausted: {exc}")
    if not verify_regularity_certificate(Q, cert):
        return fail("certificate failed verification")
    rec["stages"] = len(cert.stages)
    origin = tuple(Q.field.zero for _ in range(Q.vars.n))
    on_variety = all(g.evaluate(origin) == Q.field.zero for g in Q.factors)
    rec["origin_on_variety"] = on_variety
    if on_variety:
        rep = dfpt_at(Q, origin)
        rec["dfpt"] = rep.dfpt
        if rep.dfpt != rep.mult - Q.t or rep.fpt != Fraction(rep.dim - rep.dfpt):
            return fail("invariant identities broken at the origin")
        if rep.dfpt < 0:
            return fail("negative defect")
        try:
            cc = fpt_crosscheck(Q, fpt_es)
        except FsingError as exc:
            return fail(f"threshold oracle failure: {exc}")
        rec["lambda"] = [
            {"e": s.e, "num": s.lam.numerator, "den": s.lam.denominator} for s, _ in cc
        ]
        if any(d != 0 for _, d in cc):
            return fail("threshold crosscheck discrepancy is nonzero")
    return rec


def minimize_failure(f: Poly, e_max: int = 2, fpt_es=(1, 2)) -> Poly:
    """Greedy single-removal shrink preserving some pipeline failure."""

    def still_fails(g):
        if g.is_zero() or g.is_constant() or squarefree_offender(g) is not None:
            return False
        return not check_sqfree_sample(g, None, e_max, fpt_es)["ok"]

    cur = f
    changed = True
    while changed:
        changed = False
        for exps, _ in cur.sorted_terms():
            cand = Poly(
                cur.field, cur.vars, {e: c for e, c in cur.terms.items() if e != exps}
            )
            if still_fails(cand):
                cur = cand
                changed = True
                break
        if changed:
            continue
        for i in sorted(cur.vars_used()):
            cand = cur.substitute({i: cur.field.one})
            if still_fails(cand):
                cur = cand
                changed = True
                break
    return cur


# --------------------------------------------------------------------------
# theorem suite
# --------------------------------------------------------------------------

@dataclass
class SuiteConfig:
    p_list: tuple = (2, 3, 5)
    n: int = 8
    max_terms: int = 8
    max_factors: int = 3
    count: int = 200
    seed: int = 0
    e_max: int = 2
    fpt_es: tuple = (1, 2)
    extra_inputs: tuple = ()  # Poly instances validated before use

    def as_dict(self):
        return {
            "p_list": list(self.p_list),
            "n": self.n,
            "max_terms": self.max_terms,
            "max_factors": self.max_factors,
            "count": self.count,
            "seed": self.seed,
            "e_max": self.e_max,
            "fpt_es": list(self.fpt_es),
        }


def theorem_suite(config: SuiteConfig):
    """Run the randomized verification chain.

    Returns (results block, status).  The caller wraps both into a full
    report; status is pass unless a sample fails, in which case a
    minimized reproducer is attached to the failures list.
    """
    samples = []
    failures = []
    skipped = []
    for k, extra in enumerate(config.extra_inputs):
        if extra.is_zero() or extra.is_constant():
            skipped.append({"input": str(extra), "reason": "zero or constant"})
            continue
        off = squarefree_offender(extra)
        if off is not None:
            skipped.append(
                {
                    "input": str(extra),
                    "reason": f"not square-free supported at {extra.vars.monomial_str(off)}",
                }
            )
            continue
        rec = check_sqfree_sample(extra, None, config.e_max, config.fpt_es)
        rec["index"] = f"extra-{k}"
        samples.append(rec)
        if not rec["ok"]:
            mini = minimize_failure(extra, config.e_max, config.fpt_es)
            failures.append(
                {"index": rec["index"], "failure": rec["failure"], "minimized": str(mini)}
            )
    for i in range(config.count):
        rng = random.Random(config.seed * 1_000_003 + i)
        p = config.p_list[i % len(config.p_list)]
        t = rng.randint(1, config.max_factors)
        n_i = rng.randint(max(t, 2), config.n)
        field = build_field(p)
        f = random_sqfree(field, n_i, config.max_terms, t, seed=rng.randrange(2**30))
        rec = check_sqfree_sample(f, t, config.e_max, config.fpt_es)
        rec["index"] = i
        rec["p"] = p
        rec["n"] = n_i
        samples.append(rec)
        if not rec["ok"]:
            mini = minimize_failure(f, config.e_max, config.fpt_es)
            failures.append(
                {"index": i, "failure": rec["failure"], "poly": str(f), "minimized": str(mini)}
            )
    passed = sum(1 for r in samples if r["ok"])
    results = {
        "config": config.as_dict(),
        "count": len(samples),
        "passed": passed,
        "samples": samples,
        "failures": failures,
        "skipped": skipped,
    }
    status = "pass" if not failures else "counterexample"
    return results, status


# --------------------------------------------------------------------------
# modification construction
# --------------------------------------------------------------------------

@dataclass
class ModificationResult:
    f: Poly
    ftilde: Poly
    transformed: Poly
    witness: object
    certificate: object
    verified: bool
    dfpt: int
    max_mult: int
    point_checks: list = dc_field(default_factory=list)
    budget_exceeded: bool = False


def _fresh_name(base: str, taken):
    if base not in taken:
        return base
    k = 0
    while f"{base}{k}" in taken:
        k += 1
    return f"{base}{k}"


def _extend(poly: Poly, new_ctx: VarCtx) -> Poly:
    pad = (0,) * (new_ctx.n - poly.vars.n)
    return Poly(poly.field, new_ctx, {e + pad: c for e, c in poly.terms.items()})


def _is_homogeneous(f: Poly) -> bool:
    degs = {sum(e) for e in f.terms}
    return len(degs) == 1


def hypersurface_point_checks(
    f: Poly, s_max: int = 2, e_list=(1, 2), max_points: int = 20, budget: int = SEARCH_BUDGET
):
    """Search V(f) over small extensions; check lam(e) = n - ord pointwise.

    Returns (max multiplicity seen, list of per-point check records,
    budget flag).  The threshold identity is exact for every point by
    the supporting theory, so each record carries an ok bit instead of
    a tolerance.
    """
    n = f.vars.n
    best = 0
    checks = []
    seen = set()
    budget_exceeded = False
    for s in range(1, s_max + 1):
        grid = (f.field.p**s) ** n
        if grid > budget:
            budget_exceeded = True
            continue
        big = f.field if s == 1 else build_field(f.field.p, s)
        fe = f.embed(big)
        order = big.order
        for index in range(grid):
            point = tuple(big.decode((index // order**i) % order) for i in range(n))
            key = tuple(big.encode(a) for a in point)
            if key in seen:
                continue
            if fe.evaluate(point) != big.zero:
                continue
            seen.add(key)
            shifted = fe.shift(point)
            ordv = shifted.order_and_initial()[0]
            best = max(best, ordv)
            if len(checks) < max_points:
                entry = {"point": list(key), "s": s, "ord": ordv, "samples": [], "ok": True}
                for e in e_list:
                    sample = fpt_sample_poly(shifted, e)
                    if sample is None or sample.lam != Fraction(n - ordv):
                        entry["ok"] = False
                    if sample is not None:
                        entry["samples"].append(
                            {"e": e, "num": sample.lam.numerator, "den": sample.lam.denominator}
                        )
                checks.append(entry)
    return best, checks, budget_exceeded


def modification_build(g: Poly, h: Poly, ell_coeffs, e_max: int = 3, s_max: int = 2,
                       max_points: int = 20) -> ModificationResult:
    """Build f = g*(1 + sum a_i x_i) + h and certify its singularity data.

    Preconditions, checked in order: g and h nonzero, square-free
    supported, homogeneous, deg h = deg g + 1, g irreducible, g does
    not divide h.  The homogenization of f agrees with g*(z + sum a_i
    x_i) + h, and replacing that linear form by a fresh variable gives
    the square-free supported irreducible model whose certificate and
    invariants transfer back to f.
    """
    if g.is_zero():
        raise HypothesisViolatedError("g is zero", "g_zero")
    if h.is_zero():
        raise HypothesisViolatedError("h is zero", "h_zero")
    g._compat(h)
    for name, poly in (("g", g), ("h", h)):
        off = squarefree_offender(poly)
        if off is not None:
            raise HypothesisViolatedError(
                f"{name} is not square-free supported", f"{name}_not_squarefree"
            )
        if not _is_homogeneous(poly):
            raise HypothesisViolatedError(f"{name} is not homogeneous", f"{name}_not_homogeneous")
    if h.total_degree() != g.total_degree() + 1:
        raise HypothesisViolatedError("deg h must be deg g + 1", "degree_gap")
    if g.is_constant():
        raise HypothesisViolatedError("g must be nonconstant", "g_constant")
    if not is_irreducible_sqfree(g):
        raise HypothesisViolatedError("g is reducible", "g_reducible")
    if exact_divide(h, g) is not None:
        raise HypothesisViolatedError("g divides h", "g_divides_h")
    fld = g.field
    n = g.vars.n
    coeffs = [fld.scalar(c) if isinstance(c, int) else c for c in ell_coeffs]
    if len(coeffs) != n:
        raise HypothesisViolatedError("wrong number of linear form coefficients", "ell_arity")
    ell_terms = {(0,) * n: fld.one}
    for i, c in enumerate(coeffs):
        if c != fld.zero:
            ell_terms[tuple(1 if j == i else 0 for j in range(n))] = c
    ell = Poly(fld, g.vars, ell_terms)
    f = g * ell + h

    zname = _fresh_name("z0", g.vars.names)
    ftilde = f.homogenize(zname)
    ctx_z = ftilde.vars
    ell_tilde_terms = {}
    z_exps = tuple(1 if j == n else 0 for j in range(n + 1))
    ell_tilde_terms[z_exps] = fld.one
    for i, c in enumerate(coeffs):
        if c != fld.zero:
            ell_tilde_terms[tuple(1 if j == i else 0 for j in range(n + 1))] = c
    ell_tilde = Poly(fld, ctx_z, ell_tilde_terms)
    assert ftilde == _extend(g, ctx_z) * ell_tilde + _extend(h, ctx_z), (
        "homogenization does not match the linear-form model"
    )

    yname = _fresh_name("y", g.vars.names)
    ctx_y = VarCtx(g.vars.names + (yname,))
    y_poly = Poly.variable(fld, ctx_y, n)
    transformed = _extend(g, ctx_y) * y_poly + _extend(h, ctx_y)
    assert squarefree_offender(transformed) is None, (
        "transformed model lost square-free support"
    )
    assert is_irreducible_sqfree(transformed), "transformed model is reducible"

    Qt = CIdeal.from_factors([transformed], check_irreducible=False)
    witness = fedder_fsplit(Qt, 1)
    assert witness is not None, "transformed model failed the splitting test"
    cert = build_regularity_certificate(Qt, e_max)
    verified = verify_regularity_certificate(Qt, cert)

    max_mult, checks, flagged = hypersurface_point_checks(
        f, s_max=s_max, e_list=(1, 2), max_points=max_points
    )
    return ModificationResult(
        f=f,
        ftilde=ftilde,
        transformed=transformed,
        witness=witness,
        certificate=cert,
        verified=verified,
        dfpt=max_mult - 1,
        max_mult=max_mult,
        point_checks=checks,
        budget_exceeded=flagged,
    )
