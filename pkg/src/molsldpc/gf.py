"""Finite-field arithmetic over GF(q), q a prime power up to 256.

Elements are integer codes ``0..q-1``. For a prime ``q`` the code is the
residue itself. For ``q = p**e`` with ``e > 1`` an element is the polynomial
``c0 + c1 x + ... + c_{e-1} x^{e-1}`` packed as ``c0 + c1 p + c2 p^2 + ...``,
and multiplication is done modulo the fixed primitive polynomial listed in
:data:`PRIMITIVE_POLYNOMIALS`. The prime subfield is therefore the codes
``0..p-1`` and the integer ``n`` embeds as the code ``n mod p``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DivisionByZero, NotPrimePower

# Coefficients listed from the constant term upward, leading 1 last.
# These are the Conway polynomials for each order; all are primitive.
PRIMITIVE_POLYNOMIALS: dict[int, tuple[int, ...]] = {
    4: (1, 1, 1),                      # x^2 + x + 1
    8: (1, 1, 0, 1),                   # x^3 + x + 1
    16: (1, 1, 0, 0, 1),               # x^4 + x + 1
    32: (1, 0, 1, 0, 0, 1),            # x^5 + x^2 + 1
    64: (1, 1, 0, 1, 1, 0, 1),         # x^6 + x^4 + x^3 + x + 1
    128: (1, 1, 0, 0, 0, 0, 0, 1),     # x^7 + x + 1
    256: (1, 0, 1, 1, 1, 0, 0, 0, 1),  # x^8 + x^4 + x^3 + x^2 + 1
    9: (2, 2, 1),                      # x^2 + 2x + 2
    27: (1, 2, 0, 1),                  # x^3 + 2x + 1
    81: (2, 0, 0, 2, 1),               # x^4 + 2x^3 + 2
    243: (1, 2, 0, 0, 0, 1),           # x^5 + 2x + 1
    25: (2, 4, 1),                     # x^2 + 4x + 2
    125: (3, 3, 0, 1),                 # x^3 + 3x + 3
    49: (3, 6, 1),                     # x^2 + 6x + 3
    121: (2, 7, 1),                    # x^2 + 7x + 2
    169: (2, 12, 1),                   # x^2 + 12x + 2
}


def prime_power(q: int) -> tuple[int, int]:
    """Return ``(p, e)`` with ``q == p**e`` and ``p`` prime, else raise."""
    if not isinstance(q, (int, np.integer)) or q < 2:
        raise NotPrimePower(f"NotPrimePower: {q!r} is not a prime power")
    q = int(q)
    p = next(d for d in range(2, q + 1) if q % d == 0)
    e, rest = 0, q
    while rest % p == 0:
        rest //= p
        e += 1
    if rest != 1:
        raise NotPrimePower(f"NotPrimePower: {q} has at least two distinct prime factors")
    return p, e


@dataclass(frozen=True, eq=False)
class FieldContext:
    """Operation tables for GF(q). Immutable; obtain via :func:`field_new`."""

    q: int
    characteristic: int
    exponent: int
    add_table: np.ndarray
    mul_table: np.ndarray
    neg_table: np.ndarray
    inv_table: np.ndarray  # inv_table[0] is a placeholder 0
    polynomial: tuple[int, ...] | None

    def __repr__(self):
        return f"FieldContext(q={self.q})"

    @property
    def is_prime(self) -> bool:
        return self.exponent == 1

    def elements(self) -> range:
        return range(self.q)

    def nonzero(self) -> range:
        return range(1, self.q)

    def add(self, a, b) -> int:
        return int(self.add_table[a, b])

    def sub(self, a, b) -> int:
        return int(self.add_table[a, self.neg_table[b]])

    def mul(self, a, b) -> int:
        return int(self.mul_table[a, b])

    def neg(self, a) -> int:
        return int(self.neg_table[a])

    def inv(self, a) -> int:
        if a == 0:
            raise DivisionByZero("DivisionByZero: 0 has no multiplicative inverse")
        return int(self.inv_table[a])

    def div(self, a, b) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a, n: int) -> int:
        if n < 0:
            a, n = self.inv(a), -n
        out = 1
        for _ in range(n):
            out = self.mul(out, a)
        return out

    def from_int(self, n: int) -> int:
        """Image of the integer ``n`` (``n`` times the unit)."""
        return int(n) % self.characteristic

    def linear(self, *terms) -> int:
        """Evaluate ``sum(c * v)`` for ``(c, v)`` pairs, ``c`` an integer."""
        acc = 0
        for coeff, value in terms:
            acc = self.add(acc, self.mul(self.from_int(coeff), value))
        return acc


def _poly_tables(p: int, e: int, poly: tuple[int, ...]):
    q = p**e
    digits = np.array([[(c // p**i) % p for i in range(e)] for c in range(q)], dtype=np.int64)
    weights = p ** np.arange(e)
    add = ((digits[:, None, :] + digits[None, :, :]) % p) @ weights
    neg = ((-digits) % p) @ weights

    # powers of x by repeated multiplication modulo poly
    exp = np.zeros(q - 1, dtype=np.int64)
    log = np.full(q, -1, dtype=np.int64)
    vec = [1] + [0] * (e - 1)
    for k in range(q - 1):
        code = sum(v * p**i for i, v in enumerate(vec))
        if log[code] != -1:
            raise RuntimeError(f"polynomial for q={q} is not primitive")
        exp[k] = code
        log[code] = k
        carry = vec[-1]
        vec = [0] + vec[:-1]
        vec = [(v - carry * poly[i]) % p for i, v in enumerate(vec)]
    mul = np.zeros((q, q), dtype=np.int64)
    nz = np.arange(1, q)
    mul[1:, 1:] = exp[(log[nz][:, None] + log[nz][None, :]) % (q - 1)]
    inv = np.zeros(q, dtype=np.int64)
    inv[1:] = exp[(-log[nz]) % (q - 1)]
    return add, mul, neg, inv


@lru_cache(maxsize=None)
def field_new(q: int) -> FieldContext:
    """Build (and cache) the arithmetic context for GF(q), ``2 <= q <= 256``."""
    p, e = prime_power(q)
    if q > 256:
        raise NotPrimePower(f"NotPrimePower: fields above 256 elements are not supported (q={q})")
    if e == 1:
        r = np.arange(q)
        add = (r[:, None] + r[None, :]) % q
        mul = (r[:, None] * r[None, :]) % q
        neg = (-r) % q
        inv = np.zeros(q, dtype=np.int64)
        inv[1:] = [pow(int(a), -1, q) for a in range(1, q)]
        poly = None
    else:
        poly = PRIMITIVE_POLYNOMIALS[q]
        add, mul, neg, inv = _poly_tables(p, e, poly)
    tables = []
    for t in (add, mul, neg, inv):
        t = np.ascontiguousarray(t, dtype=np.uint8)
        t.setflags(write=False)
        tables.append(t)
    return FieldContext(q, p, e, *tables, poly)


def add(ctx: FieldContext, a, b) -> int:
    return ctx.add(a, b)


def mul(ctx: FieldContext, a, b) -> int:
    return ctx.mul(a, b)


def neg(ctx: FieldContext, a) -> int:
    return ctx.neg(a)


def inv(ctx: FieldContext, a) -> int:
    return ctx.inv(a)


def nullspace(ctx: FieldContext, rows) -> np.ndarray:
    """Basis (one vector per row) of the solutions of ``A v = 0`` over GF(q)."""
    a = np.array(rows, dtype=np.int64) % ctx.q if ctx.is_prime else np.array(rows, dtype=np.int64)
    if a.ndim != 2:
        raise ValueError("expected a 2-d coefficient matrix")
    n_rows, n = a.shape
    add, mul, neg, inv = ctx.add_table, ctx.mul_table, ctx.neg_table, ctx.inv_table
    pivots = []
    r = 0
    for c in range(n):
        hits = [i for i in range(r, n_rows) if a[i, c] != 0]
        if not hits:
            continue
        a[[r, hits[0]]] = a[[hits[0], r]]
        a[r] = mul[inv[a[r, c]], a[r]]
        for i in range(n_rows):
            if i != r and a[i, c] != 0:
                a[i] = add[a[i], mul[neg[a[i, c]], a[r]]]
        pivots.append(c)
        r += 1
        if r == n_rows:
            break
    free = [c for c in range(n) if c not in pivots]
    basis = np.zeros((len(free), n), dtype=np.int64)
    for b, f in enumerate(free):
        basis[b, f] = 1
        for i, p in enumerate(pivots):
            basis[b, p] = neg[a[i, f]]
    return basis
