"""Sparse multivariate polynomials over the contexts of :mod:`fsing.field`.

A polynomial is a table mapping exponent vectors (tuples of small
non-negative integers, one slot per variable of the ambient
:class:`VarCtx`) to nonzero field scalars.  Zero is the empty table.
Polynomials are treated as immutable once built; all operations return
fresh objects.

Two orderings on monomials are used throughout:

* the graded-lex order (total degree, then exponent vector), whose
  maximum is the leading term used for division and monic scaling;
* the canonical reading order used for serialization and witness
  selection: lower total degree first, ties broken so that the
  lexicographically largest exponent vector comes first.  "First in
  canonical order" is what reports and witness-picking functions mean
  by the least monomial.
"""

from __future__ import annotations

import math
import operator

from .errors import (
    ContextMismatchError,
    ExponentOverflowError,
    NameCollisionError,
    ZeroDivisorError,
    ZeroInputError,
)
from .field import MAX_CHAR, Field

Monomial = tuple  # exponent vector, one entry per variable


def grlex_key(exps):
    return (sum(exps), exps)


def canon_key(exps):
    return (sum(exps), tuple(-x for x in exps))


class VarCtx:
    """An ordered tuple of distinct variable names."""

    __slots__ = ("names",)

    def __init__(self, names):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise NameCollisionError(f"duplicate variable names in {names!r}")
        self.names = names

    @property
    def n(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        return self.names.index(name)

    def monomial_str(self, exps) -> str:
        parts = []
        for name, e in zip(self.names, exps):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts) if parts else "1"

    def __eq__(self, other):
        return isinstance(other, VarCtx) and self.names == other.names

    def __hash__(self):
        return hash(self.names)

    def __repr__(self):
        return f"VarCtx{self.names!r}"


class Poly:
    """Sparse polynomial; see the module docstring for the representation."""

    __slots__ = ("field", "vars", "terms")

    def __init__(self, field: Field, varctx: VarCtx, terms=None):
        self.field = field
        self.vars = varctx
        clean = {}
        n = varctx.n
        zero = field.zero
        for exps, c in (terms or {}).items():
            if len(exps) != n:
                raise ContextMismatchError(
                    f"exponent vector {exps!r} has wrong arity for {varctx!r}"
                )
            if c != zero:
                clean[exps] = c
        self.terms = clean

    # -- constructors ----------------------------------------------------

    @classmethod
    def zero(cls, field, varctx):
        return cls(field, varctx, {})

    @classmethod
    def constant(cls, field, varctx, value):
        c = field.scalar(value) if isinstance(value, int) else value
        return cls(field, varctx, {(0,) * varctx.n: c})

    @classmethod
    def variable(cls, field, varctx, i: int):
        exps = tuple(1 if j == i else 0 for j in range(varctx.n))
        return cls(field, varctx, {exps: field.one})

    @classmethod
    def make(cls, field, varctx, mapping):
        """Build from a mapping with integer or scalar coefficients."""
        terms = {}
        for exps, c in mapping.items():
            exps = tuple(int(e) for e in exps)
            if any(e < 0 or e >= MAX_CHAR for e in exps):
                raise ExponentOverflowError(f"exponent out of range in {exps!r}")
            scal = field.scalar(c) if isinstance(c, int) else field.from_coords(c)
            if scal != field.zero:
                terms[exps] = scal
        return cls(field, varctx, terms)

    # -- basic queries ---------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self.terms)

    def constant_value(self):
        if self.is_zero():
            return self.field.zero
        return self.terms[(0,) * self.vars.n]

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree_in(self, i: int) -> int:
        if not self.terms:
            return -1
        return max(e[i] for e in self.terms)

    def vars_used(self) -> frozenset:
        used = set()
        for e in self.terms:
            for i, v in enumerate(e):
                if v:
                    used.add(i)
        return frozenset(used)

    def leading_monomial(self):
        """Graded-lex maximal monomial, used for division and scaling."""
        if not self.terms:
            raise ZeroInputError("zero polynomial has no leading monomial")
        return max(self.terms, key=grlex_key)

    def least_monomial(self):
        """First monomial in canonical reading order."""
        if not self.terms:
            raise ZeroInputError("zero polynomial has no monomials")
        return min(self.terms, key=canon_key)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: canon_key(kv[0]))

    def support(self):
        return sorted(self.terms, key=canon_key)

    # -- ring operations ---------------------------------------------------

    def _compat(self, other):
        if self.field != other.field or self.vars != other.vars:
            raise ContextMismatchError("operands live in different contexts")

    def __add__(self, other):
        self._compat(other)
        fld = self.field
        out = dict(self.terms)
        for e, c in other.terms.items():
            cur = out.get(e)
            if cur is None:
                out[e] = c
            else:
                merged = fld.add(cur, c)
                if merged == fld.zero:
                    del out[e]
                else:
                    out[e] = merged
        return Poly(fld, self.vars, out)

    def __neg__(self):
        fld = self.field
        return Poly(fld, self.vars, {e: fld.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._compat(other)
        fld = self.field
        mul, add, zero = fld.mul, fld.add, fld.zero
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        out = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = tuple(map(operator.add, ea, eb))
                c = mul(ca, cb)
                cur = out.get(e)
                if cur is None:
                    out[e] = c
                else:
                    merged = add(cur, c)
                    if merged == zero:
                        del out[e]
                    else:
                        out[e] = merged
        return Poly(fld, self.vars, out)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly.constant(self.field, self.vars, 1)
        for _ in range(k):
            result = result * self
        return result

    def scale(self, c):
        fld = self.field
        if c == fld.zero:
            return Poly.zero(fld, self.vars)
        return Poly(fld, self.vars, {e: fld.mul(v, c) for e, v in self.terms.items()})

    def monic(self):
        lc = self.terms[self.leading_monomial()]
        if lc == self.field.one:
            return self
        return self.scale(self.field.inv(lc))

    def __eq__(self, other):
        return (
            isinstance(other, Poly)
            and self.field == other.field
            and self.vars == other.vars
            and self.terms == other.terms
        )

    # -- calculus and evaluation -------------------------------------------

    def derivative(self, i: int) -> "Poly":
        fld = self.field
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            if k == 0:
                continue
            coeff = fld.mul(c, fld.scalar(k))
            if coeff == fld.zero:
                continue
            ne = e[:i] + (k - 1,) + e[i + 1 :]
            out[ne] = coeff
        return Poly(fld, self.vars, out)

    def evaluate(self, point):
        fld = self.field
        if len(point) != self.vars.n:
            raise ContextMismatchError("point arity does not match variable context")
        total = fld.zero
        for e, c in self.terms.items():
            val = c
            for a, k in zip(point, e):
                if k:
                    val = fld.mul(val, fld.pow(a, k))
            total = fld.add(total, val)
        return total

    def substitute(self, assignments: dict) -> "Poly":
        """Replace the given variables (index -> scalar) by constants."""
        fld = self.field
        out = {}
        for e, c in self.terms.items():
            coeff = c
            ne = list(e)
            for i, a in assignments.items():
                k = e[i]
                if k:
                    coeff = fld.mul(coeff, fld.pow(a, k))
                    ne[i] = 0
            if coeff == fld.zero:
                continue
            ne = tuple(ne)
            cur = out.get(ne)
            if cur is None:
                out[ne] = coeff
            else:
                merged = fld.add(cur, coeff)
                if merged == fld.zero:
                    del out[ne]
                else:
                    out[ne] = merged
        return Poly(fld, self.vars, out)

    def shift(self, point) -> "Poly":
        """Substitute x_i -> x_i + a_i; exact round trip with the negated point."""
        fld = self.field
        if len(point) != self.vars.n:
            raise ContextMismatchError("point arity does not match variable context")
        result = {}
        for e, c in self.terms.items():
            moved = [i for i, a in enumerate(point) if e[i] and a != fld.zero]
            base = tuple(0 if i in moved else v for i, v in enumerate(e))
            expansion = {base: c}
            for i in moved:
                k = e[i]
                a = point[i]
                nxt = {}
                for cur_e, cur_c in expansion.items():
                    for j in range(k + 1):
                        binom = math.comb(k, j) % fld.p
                        if not binom:
                            continue
                        coeff = fld.mul(cur_c, fld.scalar(binom))
                        if j < k:
                            coeff = fld.mul(coeff, fld.pow(a, k - j))
                        if coeff == fld.zero:
                            continue
                        ne = cur_e[:i] + (j,) + cur_e[i + 1 :]
                        prev = nxt.get(ne)
                        if prev is None:
                            nxt[ne] = coeff
                        else:
                            merged = fld.add(prev, coeff)
                            if merged == fld.zero:
                                del nxt[ne]
                            else:
                                nxt[ne] = merged
                expansion = nxt
            for ne, nc in expansion.items():
                prev = result.get(ne)
                if prev is None:
                    result[ne] = nc
                else:
                    merged = fld.add(prev, nc)
                    if merged == fld.zero:
                        del result[ne]
                    else:
                        result[ne] = merged
        return Poly(fld, self.vars, result)

    def homogenize(self, name: str) -> "Poly":
        """Add a fresh last variable raising every term to the top degree."""
        if name in self.vars.names:
            raise NameCollisionError(f"variable {name!r} already present")
        new_vars = VarCtx(self.vars.names + (name,))
        d = self.total_degree()
        out = {e + (d - sum(e),): c for e, c in self.terms.items()}
        return Poly(self.field, new_vars, out)

    def order_and_initial(self):
        """Order at the origin and the sum of minimal-degree terms."""
        if self.is_zero():
            raise ZeroInputError("order of the zero polynomial is undefined")
        ordv = min(sum(e) for e in self.terms)
        init = {e: c for e, c in self.terms.items() if sum(e) == ordv}
        return ordv, Poly(self.field, self.vars, init)

    def embed(self, big: Field) -> "Poly":
        """Reinterpret a prime-field polynomial over an extension of the same p."""
        if big == self.field:
            return self
        if self.field.s != 1 or big.p != self.field.p:
            raise ContextMismatchError("embedding is supported from the prime field only")
        pad = (0,) * (big.s - 1)
        return Poly(big, self.vars, {e: (c[0],) + pad for e, c in self.terms.items()})

    def contract(self, small: Field) -> "Poly | None":
        """Inverse of :meth:`embed` when every coefficient lies in the prime subfield."""
        if small.p != self.field.p or small.s != 1:
            raise ContextMismatchError("contraction targets the prime field")
        out = {}
        for e, c in self.terms.items():
            if any(c[1:]):
                return None
            out[e] = (c[0],)
        return Poly(small, self.vars, out)

    # -- formatting --------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        fld = self.field
        parts = []
        for e, c in self.sorted_terms():
            mono = self.vars.monomial_str(e)
            cs = fld.scalar_str(c)
            if fld.s > 1 and ("+" in cs):
                cs = f"({cs})"
            if mono == "1":
                parts.append(cs)
            elif c == fld.one:
                parts.append(mono)
            else:
                parts.append(f"{cs}*{mono}")
        return " + ".join(parts)

    def __repr__(self):
        return f"Poly({self})"


# --------------------------------------------------------------------------
# division
# --------------------------------------------------------------------------

def exact_divide(f: Poly, g: Poly):
    """Quotient f/g when the division is exact, else None.

    Long division by the graded-lex leading term of g; since there is a
    single divisor, the first non-divisible leading term already proves
    that no exact quotient exists.  The result is verified by
    re-multiplication before being returned.
    """
    f._compat(g)
    if g.is_zero():
        raise ZeroDivisorError("division by the zero polynomial")
    fld = f.field
    if f.is_zero():
        return Poly.zero(fld, f.vars)
    lt_g = g.leading_monomial()
    inv_lc = fld.inv(g.terms[lt_g])
    rem = dict(f.terms)
    quo = {}
    while rem:
        lt_r = max(rem, key=grlex_key)
        diff = tuple(map(operator.sub, lt_r, lt_g))
        if any(d < 0 for d in diff):
            return None
        c = fld.mul(rem[lt_r], inv_lc)
        quo[diff] = c
        for e, v in g.terms.items():
            ne = tuple(map(operator.add, e, diff))
            cur = rem.get(ne)
            stepped = fld.mul(v, c)
            if cur is None:
                rem[ne] = fld.neg(stepped)
            else:
                merged = fld.sub(cur, stepped)
                if merged == fld.zero:
                    del rem[ne]
                else:
                    rem[ne] = merged
    q = Poly(fld, f.vars, quo)
    assert q * g == f, "exact division failed re-multiplication check"
    return q


# --------------------------------------------------------------------------
# Frobenius kernel
# --------------------------------------------------------------------------

def _truncate(terms, q, free):
    if free:
        return {
            e: c
            for e, c in terms.items()
            if all(v < q for i, v in enumerate(e) if i not in free)
        }
    return {e: c for e, c in terms.items() if all(v < q for v in e)}


def _mul_truncated(fld, a, b, q, free):
    mul, add, zero = fld.mul, fld.add, fld.zero
    if len(a) > len(b):
        a, b = b, a
    out = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(map(operator.add, ea, eb))
            if free:
                if any(v >= q for i, v in enumerate(e) if i not in free):
                    continue
            elif any(v >= q for v in e):
                continue
            c = mul(ca, cb)
            cur = out.get(e)
            if cur is None:
                out[e] = c
            else:
                merged = add(cur, c)
                if merged == zero:
                    del out[e]
                else:
                    out[e] = merged
    return out


def frobenius_power_mod_bracket(f: Poly, e: int, inverted=frozenset()) -> Poly:
    """f^(p^e - 1) reduced modulo the bracket ideal (x_i^(p^e) : i not inverted).

    Computed through the factorization
    f^(p^e-1) = prod_{i<e} (f^(p-1)) with exponents scaled by p^i and
    coefficients pushed through i Frobenius twists.  Monomials whose
    exponent on a non-inverted variable reaches p^e are discarded during
    every intermediate product; exponents only grow under multiplication,
    so this loses nothing from the final reduced result.

    Variables listed in ``inverted`` are exempt from the reduction, which
    models working over the localization where they are units.
    """
    if f.is_zero():
        raise ZeroInputError("Frobenius power of the zero polynomial")
    if not isinstance(e, int) or e < 1:
        raise ValueError(f"Frobenius exponent must be a positive integer, got {e!r}")
    fld = f.field
    q = fld.p**e
    if q >= MAX_CHAR:
        raise ExponentOverflowError(f"p^e = {q} leaves the supported exponent range")
    free = frozenset(inverted)
    base = _truncate(f.terms, q, free)
    acc = {(0,) * f.vars.n: fld.one}
    for _ in range(fld.p - 1):
        acc = _mul_truncated(fld, acc, base, q, free)
    result = acc
    for i in range(1, e):
        scale = fld.p**i
        twisted = {}
        for exps, c in acc.items():
            ne = tuple(v * scale for v in exps)
            if free:
                if any(v >= q for j, v in enumerate(ne) if j not in free):
                    continue
            elif any(v >= q for v in ne):
                continue
            twisted[ne] = fld.pow(c, scale)
        result = _mul_truncated(fld, result, twisted, q, free)
    return Poly(fld, f.vars, result)


def multiply_monomial_truncated(f: Poly, exps, q, inverted=frozenset()) -> Poly:
    """f times the monomial x^exps, discarding terms hitting the bracket."""
    free = frozenset(inverted)
    out = {}
    for e, c in f.terms.items():
        ne = tuple(map(operator.add, e, exps))
        if free:
            if any(v >= q for i, v in enumerate(ne) if i not in free):
                continue
        elif any(v >= q for v in ne):
            continue
        out[ne] = c
    return Poly(f.field, f.vars, out)
