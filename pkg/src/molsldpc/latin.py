"""The Latin squares ``L[x, y] = alpha*x + beta*y`` over GF(q) and sets of MOLS built from them."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import DuplicateClass, OrderMismatch, ZeroScaleFactor
from .gf import FieldContext


def latin_array(ctx: FieldContext, alpha: int, beta: int) -> np.ndarray:
    """Materialise ``alpha*x + beta*y`` as a ``q x q`` array (no validation)."""
    r = np.arange(ctx.q)
    ax = ctx.mul_table[alpha, r].astype(np.intp)
    by = ctx.mul_table[beta, r].astype(np.intp)
    return ctx.add_table[ax[:, None], by[None, :]].astype(np.int64)


@dataclass(frozen=True, eq=False)
class LatinSquare:
    ctx: FieldContext
    alpha: int
    beta: int = 1

    def __post_init__(self):
        for v in (self.alpha, self.beta):
            if not 0 <= v < self.ctx.q:
                raise ValueError(f"scale factor {v} is not an element of GF({self.ctx.q})")
        if self.alpha == 0 or self.beta == 0:
            raise ZeroScaleFactor(f"ZeroScaleFactor: ({self.alpha}, {self.beta})")

    def __repr__(self):
        return f"LatinSquare(q={self.ctx.q}, alpha={self.alpha}, beta={self.beta})"

    @property
    def order(self) -> int:
        return self.ctx.q

    @property
    def pair(self) -> tuple[int, int]:
        return (self.alpha, self.beta)

    def cell(self, x: int, y: int) -> int:
        ctx = self.ctx
        return ctx.add(ctx.mul(self.alpha, x), ctx.mul(self.beta, y))

    @cached_property
    def array(self) -> np.ndarray:
        a = latin_array(self.ctx, self.alpha, self.beta)
        a.setflags(write=False)
        return a

    def same_as(self, other: "LatinSquare") -> bool:
        return self.ctx.q == other.ctx.q and self.pair == other.pair


def latin_cell(square: LatinSquare, x: int, y: int) -> int:
    return square.cell(x, y)


def is_latin(square) -> bool:
    """Row/column uniqueness check; accepts a :class:`LatinSquare` or an array."""
    arr = square.array if isinstance(square, LatinSquare) else np.asarray(square)
    n = arr.shape[0]
    if arr.shape != (n, n):
        return False
    target = np.arange(n)
    rows_ok = (np.sort(arr, axis=1) == target).all()
    cols_ok = (np.sort(arr, axis=0) == target[:, None]).all()
    return bool(rows_ok and cols_ok)


def are_orthogonal(l1: LatinSquare, l2: LatinSquare) -> bool:
    if l1.order != l2.order or l1.ctx.q != l2.ctx.q:
        raise OrderMismatch(f"OrderMismatch: orders {l1.order} and {l2.order}")
    q = l1.order
    codes = l1.array.ravel() * q + l2.array.ravel()
    return np.unique(codes).size == q * q


def class_representative(ctx: FieldContext, alpha: int, beta: int) -> tuple[int, int]:
    """Canonical member ``(alpha/beta, 1)`` of the class containing ``(alpha, beta)``."""
    if alpha == 0 or beta == 0:
        raise ZeroScaleFactor(f"ZeroScaleFactor: ({alpha}, {beta})")
    return (ctx.div(alpha, beta), 1)


def equivalence_class(ctx: FieldContext, alpha: int) -> list[tuple[int, int]]:
    """All ``x * (alpha, 1)`` for nonzero ``x``."""
    return [(ctx.mul(x, alpha), x) for x in ctx.nonzero()]


@dataclass(frozen=True, eq=False)
class MolsSet:
    ctx: FieldContext
    squares: tuple[LatinSquare, ...]

    @property
    def m(self) -> int:
        return len(self.squares)

    @property
    def q(self) -> int:
        return self.ctx.q

    @property
    def pairs(self) -> list[tuple[int, int]]:
        return [s.pair for s in self.squares]

    def __iter__(self):
        return iter(self.squares)

    def __len__(self):
        return len(self.squares)


def build_mols(ctx: FieldContext, pairs) -> MolsSet:
    pairs = [(int(a), int(b)) for a, b in pairs]
    if not 1 <= len(pairs) <= ctx.q - 1:
        raise ValueError(f"need between 1 and {ctx.q - 1} squares, got {len(pairs)}")
    squares = tuple(LatinSquare(ctx, a, b) for a, b in pairs)
    seen = {}
    for idx, (a, b) in enumerate(pairs):
        rep = class_representative(ctx, a, b)
        if rep in seen:
            raise DuplicateClass(
                seen[rep], idx,
                f"DuplicateClass: pairs #{seen[rep]} {pairs[seen[rep]]} and #{idx} {(a, b)} "
                f"share the class of {rep}",
            )
        seen[rep] = idx
    return MolsSet(ctx, squares)


def reduced_mols(ctx: FieldContext, alphas) -> MolsSet:
    return build_mols(ctx, [(a, 1) for a in alphas])
