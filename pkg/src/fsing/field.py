"""Arithmetic contexts for prime fields and their small extensions.

A field F_{p^s} (p prime below 2^16, 1 <= s <= 4) is represented by a
:class:`Field` object.  Elements are plain tuples of ``s`` residues, the
coordinates with respect to the power basis 1, t, ..., t^(s-1) of the
quotient F_p[t]/(modulus).  The context object owns all arithmetic, so
element tuples stay cheap to hash and compare and can serve directly as
coefficient values in sparse polynomial tables.

The modulus is not user supplied: construction picks the first monic
irreducible polynomial of degree s when monic candidates are enumerated
by their coefficient sequence, higher-degree coefficients most
significant.  Irreducibility is certified by trial division against
every monic polynomial of degree at most s/2.
"""

from __future__ import annotations

import functools
from itertools import product

from .errors import DegreeRangeError, FieldMismatchError, NotPrimeError

MAX_CHAR = 1 << 16


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


# ----------------------------------------------------------------------
# dense univariate helpers over F_p, ascending coefficient lists
# ----------------------------------------------------------------------

def _utrim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _uremainder(a, b, p):
    """Remainder of a modulo b; b must be monic."""
    r = list(a)
    _utrim(r)
    db = len(b) - 1
    while len(r) - 1 >= db and r:
        shift = len(r) - 1 - db
        c = r[-1]
        for i in range(db + 1):
            r[shift + i] = (r[shift + i] - c * b[i]) % p
        _utrim(r)
    return r


def _irreducible_by_trial_division(coeffs, p):
    """Trial division of a monic polynomial by all monic divisors of degree <= deg/2."""
    s = len(coeffs) - 1
    for d in range(1, s // 2 + 1):
        for tail in product(range(p), repeat=d):
            divisor = list(tail) + [1]
            if not _uremainder(coeffs, divisor, p):
                return False
    return True


def _smallest_irreducible(p, s):
    # candidates enumerated with the degree-(s-1) coefficient most significant
    for m in range(p**s):
        coeffs = [(m // p**i) % p for i in range(s)] + [1]
        if _irreducible_by_trial_division(coeffs, p):
            return tuple(coeffs)
    raise AssertionError("no irreducible polynomial found, impossible")


@functools.lru_cache(maxsize=None)
def build_field(p: int, s: int = 1) -> "Field":
    """Construct (and cache) the field F_{p^s}."""
    return Field(p, s)


class Field:
    """Arithmetic context for F_{p^s}; see the module docstring."""

    __slots__ = ("p", "s", "modulus", "zero", "one", "_reduction")

    def __init__(self, p: int, s: int = 1):
        if not isinstance(p, int) or not is_prime(p) or p >= MAX_CHAR:
            raise NotPrimeError(f"characteristic must be a prime below 2^16, got {p!r}")
        if not isinstance(s, int) or not 1 <= s <= 4:
            raise DegreeRangeError(f"extension degree must lie in 1..4, got {s!r}")
        self.p = p
        self.s = s
        self.modulus = None if s == 1 else _smallest_irreducible(p, s)
        self.zero = (0,) * s
        self.one = (1,) + (0,) * (s - 1)
        self._reduction = self._build_reduction() if s > 1 else None

    def _build_reduction(self):
        # coordinates of t^k for k in s..2s-2
        p, s = self.p, self.s
        rows = []
        cur = [(-c) % p for c in self.modulus[:s]]  # t^s
        rows.append(tuple(cur))
        for _ in range(s - 2):
            top = cur[-1]
            cur = [0] + cur[:-1]
            for i in range(s):
                cur[i] = (cur[i] + top * rows[0][i]) % p
            rows.append(tuple(cur))
        return rows

    # -- element construction ------------------------------------------

    def scalar(self, value: int):
        """Embed an integer into the prime subfield."""
        return (value % self.p,) + (0,) * (self.s - 1)

    def from_coords(self, coords):
        coords = tuple(int(c) for c in coords)
        if len(coords) != self.s:
            raise FieldMismatchError(f"expected {self.s} coordinates, got {len(coords)}")
        if any(not 0 <= c < self.p for c in coords):
            raise FieldMismatchError("coordinates must be reduced residues")
        return coords

    @property
    def order(self) -> int:
        return self.p**self.s

    def decode(self, index: int):
        """Element with the given base-p digit encoding, 0 <= index < p^s."""
        p = self.p
        return tuple((index // p**i) % p for i in range(self.s))

    def encode(self, a) -> int:
        return sum(c * self.p**i for i, c in enumerate(a))

    def elements(self):
        for m in range(self.order):
            yield self.decode(m)

    # -- arithmetic ----------------------------------------------------

    def _check(self, a, b):
        if len(a) != self.s or len(b) != self.s:
            raise FieldMismatchError("scalar does not belong to this field")

    def add(self, a, b):
        self._check(a, b)
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def sub(self, a, b):
        self._check(a, b)
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def neg(self, a):
        p = self.p
        return tuple((-x) % p for x in a)

    def mul(self, a, b):
        self._check(a, b)
        p, s = self.p, self.s
        if s == 1:
            return ((a[0] * b[0]) % p,)
        conv = [0] * (2 * s - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    conv[i + j] += x * y
        out = [c % p for c in conv[:s]]
        for k in range(s, 2 * s - 1):
            c = conv[k] % p
            if c:
                row = self._reduction[k - s]
                for i in range(s):
                    out[i] = (out[i] + c * row[i]) % p
        return tuple(out)

    def pow(self, a, k: int):
        if k < 0:
            return self.pow(self.inv(a), -k)
        result = self.one
        base = a
        while k:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    def inv(self, a):
        if a == self.zero:
            raise ZeroDivisionError("inverse of zero")
        if self.s == 1:
            return (pow(a[0], self.p - 2, self.p),)
        return self.pow(a, self.order - 2)

    def frobenius(self, a):
        """The p-power map, a field automorphism fixing the prime subfield."""
        return self.pow(a, self.p)

    def is_zero(self, a) -> bool:
        return a == self.zero

    # -- formatting ----------------------------------------------------

    def scalar_str(self, a) -> str:
        if self.s == 1:
            return str(a[0])
        parts = []
        for k in range(self.s - 1, -1, -1):
            c = a[k]
            if not c:
                continue
            if k == 0:
                parts.append(str(c))
            else:
                head = "" if c == 1 else f"{c}*"
                parts.append(f"{head}t" if k == 1 else f"{head}t^{k}")
        return "+".join(parts) if parts else "0"

    def modulus_str(self) -> str:
        if self.modulus is None:
            return ""
        parts = []
        for k in range(self.s, -1, -1):
            c = self.modulus[k]
            if not c:
                continue
            if k == 0:
                parts.append(str(c))
            else:
                head = "" if c == 1 else f"{c}*"
                parts.append(f"{head}t" if k == 1 else f"{head}t^{k}")
        return "+".join(parts)

    def __eq__(self, other):
        return (
            isinstance(other, Field)
            and self.p == other.p
            and self.s == other.s
            and self.modulus == other.modulus
        )

    def __hash__(self):
        return hash((self.p, self.s, self.modulus))

    def __repr__(self):
        if self.s == 1:
            return f"Field({self.p})"
        return f"Field({self.p}^{self.s}, t: {self.modulus_str()})"
