"""Frobenius splitting tests, regularity certificates, threshold samples.

Everything here reduces to one kernel: f^(p^e - 1) modulo a bracket
ideal, computed by :func:`fsing.poly.frobenius_power_mod_bracket`.  For
an ideal generated by variable-disjoint factors the colon ideal of the
bracket power is generated by f^(p^e-1) together with the bracket
itself, so splitting at the origin is the survival of a single reduced
power, and the localized regularity steps only change which variables
the bracket reduction may touch.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .errors import (
    CertificateSearchExhausted,
    MinimalPrimeError,
    TheoremContradictionError,
    ZeroInputError,
)
from .poly import (
    Poly,
    canon_key,
    exact_divide,
    frobenius_power_mod_bracket,
    multiply_monomial_truncated,
)
from .structure import CIdeal


@dataclass(frozen=True)
class SplitWitness:
    """Monomial surviving the reduced Frobenius power at level e."""

    e: int
    q: int
    witness: tuple

    def __post_init__(self):
        assert all(0 <= v <= self.q - 1 for v in self.witness)


@dataclass(frozen=True)
class RegStage:
    """One localization step of a regularity certificate."""

    inverted_var: int
    e: int
    multiplier: tuple
    witness: tuple


@dataclass
class RegCertificate:
    """Chain of localization stages plus base-case unit monomials."""

    stages: list
    base: list  # (factor index, unit monomial) pairs
    notes: list = dc_field(default_factory=list)


@dataclass(frozen=True)
class FptSample:
    """One oracle sample of the F-pure threshold at q = p^e."""

    e: int
    q: int
    b: int
    lam: Fraction


def _split_poly(f: Poly, e: int):
    reduced = frobenius_power_mod_bracket(f, e)
    if reduced.is_zero():
        return None, reduced
    return min(reduced.terms, key=canon_key), reduced


def fsplit_witness(f: Poly, e: int):
    """Splitting witness for a bare hypersurface f, or None when none survives."""
    witness, _ = _split_poly(f, e)
    if witness is None:
        return None
    return SplitWitness(e, f.field.p**e, witness)


def fedder_fsplit(Q: CIdeal, e: int):
    """Splitting test at the origin for the complete intersection Q.

    Returns the first surviving monomial of f^(p^e-1) mod the bracket
    ideal in canonical order, packaged as a witness, or None when the
    reduced power vanishes.
    """
    return fsplit_witness(Q.product(), e)


def verify_split_witness(Q: CIdeal, w: SplitWitness) -> bool:
    """Re-check that a reported witness really survives the reduction."""
    reduced = frobenius_power_mod_bracket(Q.product(), w.e)
    return w.witness in reduced.terms


def glassbrenner_condition(Q: CIdeal, g_exps, e: int):
    """Witness for g * f^(p^e-1) outside the bracket ideal, g a monomial.

    The multiplier must avoid every minimal prime (f_i) of the ideal,
    checked by exact division of the monomial by each factor.
    """
    g_poly = Poly(Q.field, Q.vars, {tuple(g_exps): Q.field.one})
    for fac in Q.factors:
        if exact_divide(g_poly, fac) is not None:
            raise MinimalPrimeError(f"multiplier {g_poly} lies in ({fac})")
    f = Q.product()
    q = Q.field.p**e
    reduced = frobenius_power_mod_bracket(f, e)
    shifted = multiply_monomial_truncated(reduced, tuple(g_exps), q)
    if shifted.is_zero():
        return None
    return min(shifted.terms, key=canon_key)


# --------------------------------------------------------------------------
# regularity certificates
# --------------------------------------------------------------------------

def _uninverted_degree(exps, inverted):
    return sum(v for i, v in enumerate(exps) if i not in inverted)


def _discharged(factor: Poly, inverted) -> bool:
    """A factor is a unit in the localization once some support monomial
    has every variable inverted."""
    return any(_uninverted_degree(e, inverted) == 0 for e in factor.terms)


def _active_product(factors, active):
    head = factors[active[0]]
    result = head
    for i in active[1:]:
        result = result * factors[i]
    return result


def _stage_witness(f: Poly, var: int, e: int, inverted):
    """Surviving monomial of x_var * f^(p^e-1) under the localized bracket."""
    q = f.field.p**e
    reduced = frobenius_power_mod_bracket(f, e, inverted=inverted)
    mult = tuple(1 if i == var else 0 for i in range(f.vars.n))
    shifted = multiply_monomial_truncated(reduced, mult, q, inverted=inverted)
    if shifted.is_zero():
        return None
    return min(shifted.terms, key=canon_key)


def build_regularity_certificate(Q: CIdeal, e_max: int = 3) -> RegCertificate:
    """Construct a chain of variable inversions ending in unit monomials.

    Mirrors an induction on the factor supports: while some factor has
    all support monomials of un-inverted degree two or more, invert one
    of its variables after exhibiting a surviving localized witness.
    The base case requires every remaining factor to contain a support
    monomial whose un-inverted part is a single variable.

    Stage selection is deterministic: the least-index offending factor,
    its greatest-index un-inverted variable, the smallest e that yields
    a witness.  When that choice finds no witness up to e_max, every
    (variable, e) pair is tried in lexicographic order before giving up.
    """
    inverted: set = set()
    stages: list = []
    notes: list = []
    active = list(range(len(Q.factors)))

    def discharge():
        nonlocal active
        kept = []
        for i in active:
            if _discharged(Q.factors[i], inverted):
                notes.append(
                    f"factor {i} became a unit after inverting "
                    f"{sorted(inverted)} and was discharged"
                )
            else:
                kept.append(i)
        active = kept

    while True:
        discharge()
        if not active:
            return RegCertificate(stages, [], notes)
        base = []
        offending = None
        for i in active:
            units = [
                e for e in Q.factors[i].terms if _uninverted_degree(e, inverted) == 1
            ]
            if units:
                base.append((i, min(units, key=canon_key)))
            elif offending is None:
                offending = i
        if offending is None:
            return RegCertificate(stages, base, notes)
        f = _active_product(Q.factors, active)
        preferred = [
            v for v in sorted(Q.factors[offending].vars_used()) if v not in inverted
        ]
        found = None
        if preferred:
            var = preferred[-1]
            for e in range(1, e_max + 1):
                witness = _stage_witness(f, var, e, frozenset(inverted))
                if witness is not None:
                    found = (var, e, witness)
                    break
        if found is None:
            candidates = sorted(f.vars_used() - inverted)
            for var in candidates:
                for e in range(1, e_max + 1):
                    witness = _stage_witness(f, var, e, frozenset(inverted))
                    if witness is not None:
                        found = (var, e, witness)
                        break
                if found:
                    break
        if found is None:
            raise CertificateSearchExhausted(
                f"no localized witness up to e_max={e_max} for {f}; "
                "for square-free supported input this contradicts the theory"
            )
        var, e, witness = found
        mult = tuple(1 if i == var else 0 for i in range(Q.vars.n))
        stages.append(RegStage(var, e, mult, witness))
        inverted.add(var)


def _verify_explain(Q: CIdeal, cert: RegCertificate):
    p = Q.field.p
    inverted: set = set()
    active = list(range(len(Q.factors)))

    def discharge():
        nonlocal active
        active = [i for i in active if not _discharged(Q.factors[i], inverted)]

    for k, stage in enumerate(cert.stages):
        discharge()
        if stage.inverted_var in inverted:
            return False, f"stage {k}: variable already inverted"
        expected_mult = tuple(
            1 if i == stage.inverted_var else 0 for i in range(Q.vars.n)
        )
        if tuple(stage.multiplier) != expected_mult:
            return False, f"stage {k}: multiplier is not the inverted variable"
        if not active:
            return False, f"stage {k}: no factors remain to localize"
        q = p**stage.e
        if any(
            v > q - 1 for i, v in enumerate(stage.witness) if i not in inverted
        ):
            return False, f"stage {k}: witness has an un-inverted exponent >= p^e"
        f = _active_product(Q.factors, active)
        reduced = frobenius_power_mod_bracket(f, stage.e, inverted=frozenset(inverted))
        shifted = multiply_monomial_truncated(
            reduced, tuple(stage.multiplier), q, inverted=frozenset(inverted)
        )
        if tuple(stage.witness) not in shifted.terms:
            return False, f"stage {k}: witness does not survive the reduction"
        inverted.add(stage.inverted_var)
    discharge()
    recorded = {i for i, _ in cert.base}
    if recorded != set(active):
        return False, "base: recorded factors do not match the remaining ones"
    unit_vars = set()
    for i, mono in cert.base:
        mono = tuple(mono)
        if mono not in Q.factors[i].terms:
            return False, f"base: monomial not in the support of factor {i}"
        units = [j for j, v in enumerate(mono) if v and j not in inverted]
        if _uninverted_degree(mono, inverted) != 1 or len(units) != 1:
            return False, f"base: monomial for factor {i} is not a unit monomial"
        if units[0] in unit_vars:
            return False, "base: unit variables are not distinct"
        unit_vars.add(units[0])
    return True, None


def verify_regularity_certificate(Q: CIdeal, cert: RegCertificate) -> bool:
    """Deterministically replay a certificate against the ideal."""
    ok, _ = _verify_explain(Q, cert)
    return ok


# --------------------------------------------------------------------------
# F-pure threshold oracle
# --------------------------------------------------------------------------

def fpt_sample_poly(f: Poly, e: int):
    """Threshold sample of a bare polynomial at q = p^e, or None when unsplit.

    b is the largest total degree of a monomial multiplier keeping the
    reduced power outside the bracket ideal: for a surviving monomial w
    the best multiplier fills every exponent up to q-1, so b is the
    maximal coordinate slack of the survivors.
    """
    if f.is_zero():
        raise ZeroInputError("threshold sample of the zero polynomial")
    q = f.field.p**e
    reduced = frobenius_power_mod_bracket(f, e)
    if reduced.is_zero():
        return None
    n = f.vars.n
    b = max(n * (q - 1) - sum(w) for w in reduced.terms)
    return FptSample(e, q, b, Fraction(b, q - 1))


def fpt_oracle(Q: CIdeal, e: int):
    """Threshold sample for the complete intersection Q at q = p^e."""
    return fpt_sample_poly(Q.product(), e)


def assert_split_or_dump(Q: CIdeal, e: int = 1):
    """Raise a loud contradiction when a square-free supported ideal fails
    the splitting test; used by the pipeline as a tripwire."""
    w = fedder_fsplit(Q, e)
    if w is None:
        f = Q.product()
        raise TheoremContradictionError(
            "square-free supported input failed the splitting test",
            dump={
                "e": e,
                "q": Q.field.p**e,
                "poly": str(f),
                "factors": [str(g) for g in Q.factors],
                "reduced_power": str(frobenius_power_mod_bracket(f, e)),
            },
        )
    return w
