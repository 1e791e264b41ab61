"""Variable-disjoint factorization and square-free support utilities."""

import random

import pytest

from conftest import mk, oracle_factorization
from fsing import (
    CIdeal,
    Poly,
    VarCtx,
    build_field,
    degree_one_irreducibility,
    disjoint_factorization,
    extension_stability_check,
    gcd_sqfree,
    is_irreducible_sqfree,
    is_squarefree_supported,
    squarefree_offender,
)
from fsing.errors import (
    DegreeRangeError,
    FsingError,
    NotSquareFreeSupportedError,
    ZeroLeadingError,
    ZeroOrConstantError,
)
from fsing.structure import _bipartition_factors

F2 = build_field(2)
F3 = build_field(3)
F5 = build_field(5)


def random_planted_product(fld, n, t, rng):
    """Product of t irreducible factors over disjoint variable blocks."""
    ctx = VarCtx(tuple(f"x{i}" for i in range(n)))
    order = list(range(n))
    rng.shuffle(order)
    cuts = sorted(rng.sample(range(1, n), t - 1)) if t > 1 else []
    blocks, prev = [], 0
    for cut in cuts + [n]:
        blocks.append(sorted(order[prev:cut]))
        prev = cut
    factors = []
    for block in blocks:
        while True:
            m = rng.randint(1, min(3, 2 ** len(block) - 1))
            subsets = rng.sample(
                [s for s in range(1, 2 ** len(block))], m
            )
            terms = {}
            for s in subsets:
                exps = [0] * n
                for j, v in enumerate(block):
                    if s >> j & 1:
                        exps[v] = 1
                terms[tuple(exps)] = fld.decode(rng.randrange(1, fld.order))
            cand = Poly(fld, ctx, terms)
            if is_irreducible_sqfree(cand):
                factors.append(cand)
                break
    prod = Poly.constant(fld, ctx, 1)
    for g in factors:
        prod = prod * g
    return prod, factors


def test_squarefree_offender():
    ctx = VarCtx(("x", "y", "z"))
    f = mk(F2, ctx, {(2, 1, 0): 1, (1, 0, 1): 1})
    assert squarefree_offender(f) == (2, 1, 0)
    assert not is_squarefree_supported(f)
    g = mk(F2, ctx, {(1, 1, 0): 1, (0, 0, 1): 1})
    assert squarefree_offender(g) is None
    assert is_squarefree_supported(g)


def test_factorization_frozen_examples():
    ctx = VarCtx(("x", "y", "z", "w"))
    # (x + y)(z + w) expanded
    f = mk(F2, ctx, {(1, 0, 1, 0): 1, (1, 0, 0, 1): 1, (0, 1, 1, 0): 1, (0, 1, 0, 1): 1})
    Q = disjoint_factorization(f)
    assert Q.t == 2
    assert [str(g) for g in Q.factors] == ["x + y", "z + w"]
    assert Q.constant == F2.one
    assert not Q.used_fallback
    # xy + zw is irreducible
    g = mk(F2, ctx, {(1, 1, 0, 0): 1, (0, 0, 1, 1): 1})
    Qg = disjoint_factorization(g)
    assert Qg.t == 1
    assert Qg.factors[0] == g


def test_factorization_nested_example():
    ctx = VarCtx(("x", "y", "z", "u", "v", "w"))
    # (x + yz)(u + vw) expanded
    f = mk(
        F2,
        ctx,
        {
            (1, 0, 0, 1, 0, 0): 1,
            (1, 0, 0, 0, 1, 1): 1,
            (0, 1, 1, 1, 0, 0): 1,
            (0, 1, 1, 0, 1, 1): 1,
        },
    )
    Q = disjoint_factorization(f)
    assert [str(g) for g in Q.factors] == ["x + y*z", "u + v*w"]


def test_factorization_single_variable_and_monomials():
    ctx = VarCtx(("x", "y", "z"))
    Q = disjoint_factorization(mk(F2, ctx, {(1, 0, 0): 1}))
    assert [str(g) for g in Q.factors] == ["x"]
    Q3 = disjoint_factorization(mk(F2, ctx, {(1, 1, 1): 1}))
    assert [str(g) for g in Q3.factors] == ["x", "y", "z"]


def test_factorization_constant_scaling():
    ctx = VarCtx(("x", "y", "z", "w"))
    f = mk(F5, ctx, {(1, 0, 1, 0): 2, (1, 0, 0, 1): 2, (0, 1, 1, 0): 2, (0, 1, 0, 1): 2})
    Q = disjoint_factorization(f)
    assert Q.constant == F5.scalar(2)
    assert Q.product().scale(Q.constant) == f


def test_factorization_rejects_bad_inputs():
    ctx = VarCtx(("x", "y"))
    with pytest.raises(ZeroOrConstantError):
        disjoint_factorization(Poly.zero(F2, ctx))
    with pytest.raises(ZeroOrConstantError):
        disjoint_factorization(Poly.constant(F2, ctx, 1))
    with pytest.raises(NotSquareFreeSupportedError):
        disjoint_factorization(mk(F2, ctx, {(2, 0): 1}))


def test_factorization_matches_oracle_random():
    rng = random.Random(101)
    for trial in range(100):
        fld = (F2, F3, F5)[trial % 3]
        n = rng.randint(2, 6)
        ctx = VarCtx(tuple(f"x{i}" for i in range(n)))
        terms = {}
        for _ in range(rng.randint(1, 5)):
            exps = tuple(rng.randint(0, 1) for _ in range(n))
            terms[exps] = fld.decode(rng.randrange(1, fld.order))
        f = Poly(fld, ctx, terms)
        if f.is_zero() or f.is_constant():
            continue
        expect_const, expect_factors = oracle_factorization(f)
        Q = disjoint_factorization(f)
        assert Q.constant == expect_const
        assert Q.factors == expect_factors


def test_factorization_recovers_planted_factors():
    rng = random.Random(202)
    for trial in range(60):
        fld = (F2, F3)[trial % 2]
        n = rng.randint(3, 7)
        t = rng.randint(1, 3)
        if t > n:
            continue
        prod, planted = random_planted_product(fld, n, t, rng)
        Q = disjoint_factorization(prod)
        assert Q.t == t
        assert sorted(Q.factors, key=str) == sorted(
            [g.monic() for g in planted], key=str
        )


def test_bipartition_fallback_agrees():
    ctx = VarCtx(("x", "y", "z", "w"))
    f = mk(F2, ctx, {(1, 0, 1, 0): 1, (1, 0, 0, 1): 1, (0, 1, 1, 0): 1, (0, 1, 0, 1): 1})
    parts = _bipartition_factors(f)
    assert parts is not None
    left, right = parts
    assert left * right == f


def test_is_irreducible():
    ctx = VarCtx(("x", "y", "z", "w"))
    assert is_irreducible_sqfree(mk(F2, ctx, {(1, 1, 0, 0): 1, (0, 0, 1, 1): 1}))
    assert not is_irreducible_sqfree(
        mk(F2, ctx, {(1, 0, 1, 0): 1, (1, 0, 0, 1): 1, (0, 1, 1, 0): 1, (0, 1, 0, 1): 1})
    )
    assert is_irreducible_sqfree(mk(F2, ctx, {(1, 0, 0, 0): 1}))
    assert not is_irreducible_sqfree(mk(F2, ctx, {(1, 1, 0, 0): 1}))


def test_cideal_from_factors():
    ctx = VarCtx(("x", "y", "z", "w"))
    g1 = mk(F5, ctx, {(1, 1, 0, 0): 2, (0, 0, 0, 0): 0, (1, 0, 0, 0): 1})
    g2 = mk(F5, ctx, {(0, 0, 1, 1): 3})
    Q = CIdeal.from_factors([g1, g2], check_irreducible=False)
    assert Q.t == 2
    # factors are normalized monic, the scalars folded into the constant
    assert all(g.terms[g.leading_monomial()] == F5.one for g in Q.factors)
    assert Q.constant == F5.scalar(6)
    with pytest.raises(FsingError):
        CIdeal.from_factors([g1, g1], check_irreducible=False)  # shared variables
    with pytest.raises(ZeroOrConstantError):
        CIdeal.from_factors([])


def test_gcd_sqfree():
    ctx = VarCtx(("x", "y", "z", "w", "u"))
    xy = mk(F2, ctx, {(1, 0, 0, 0, 0): 1, (0, 1, 0, 0, 0): 1})  # x + y
    zw = mk(F2, ctx, {(0, 0, 1, 1, 0): 1, (0, 0, 0, 0, 1): 1})  # zw + u
    other = mk(F2, ctx, {(0, 0, 1, 0, 0): 1})  # z
    assert gcd_sqfree(xy * zw, xy * other) == xy
    assert gcd_sqfree(xy * zw, other).is_constant()
    assert gcd_sqfree(xy * zw, xy * zw) == xy * zw
    one = Poly.constant(F2, ctx, 1)
    assert gcd_sqfree(xy, one) == one
    with pytest.raises(ZeroOrConstantError):
        gcd_sqfree(Poly.zero(F2, ctx), xy)


def test_degree_one_irreducibility():
    ctx = VarCtx(("x", "y", "z", "w"))
    xy = mk(F2, ctx, {(1, 1, 0, 0): 1})
    zw = mk(F2, ctx, {(0, 0, 1, 1): 1})
    x = mk(F2, ctx, {(1, 0, 0, 0): 1})
    one = Poly.constant(F2, ctx, 1)
    assert degree_one_irreducibility(x, one)  # x + y_new * 1
    assert degree_one_irreducibility(xy, zw)  # disjoint supports
    assert not degree_one_irreducibility(xy, x)  # common factor x
    assert not degree_one_irreducibility(x, Poly.zero(F2, ctx))
    assert degree_one_irreducibility(one, Poly.zero(F2, ctx))
    with pytest.raises(ZeroLeadingError):
        degree_one_irreducibility(Poly.zero(F2, ctx), x)


def test_degree_one_matches_direct_factorization():
    # g + y*h is irreducible exactly when the predicate says so
    rng = random.Random(77)
    ctx = VarCtx(("x", "y", "z"))
    big = VarCtx(("x", "y", "z", "u"))
    for _ in range(60):
        terms_g = {
            tuple(rng.randint(0, 1) for _ in range(3)): F2.one
            for _ in range(rng.randint(1, 3))
        }
        terms_h = {
            tuple(rng.randint(0, 1) for _ in range(3)): F2.one
            for _ in range(rng.randint(1, 3))
        }
        g = Poly(F2, ctx, terms_g)
        h = Poly(F2, ctx, terms_h)
        if g.is_zero() or h.is_zero():
            continue
        combined = Poly(
            F2,
            big,
            {e + (0,): c for e, c in g.terms.items()}
        ) + Poly(F2, big, {e + (1,): c for e, c in h.terms.items()})
        if squarefree_offender(combined) is not None:
            continue
        if combined.is_constant():
            continue
        assert degree_one_irreducibility(g, h) == is_irreducible_sqfree(combined)


def test_extension_stability():
    ctx = VarCtx(("x", "y", "z", "w"))
    f = mk(F2, ctx, {(1, 1, 0, 0): 1, (0, 0, 1, 1): 1})
    assert extension_stability_check(f, 2)
    assert extension_stability_check(f, 3)
    prod = mk(F2, ctx, {(1, 0, 1, 0): 1, (1, 0, 0, 1): 1, (0, 1, 1, 0): 1, (0, 1, 0, 1): 1})
    assert extension_stability_check(prod, 2)
    with pytest.raises(DegreeRangeError):
        extension_stability_check(f, 5)
