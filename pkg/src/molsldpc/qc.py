"""Quasi-cyclic arrangement for prime order ``p``.

Each square ``(alpha, 1)`` is replaced by ``w*(alpha, 1)`` with ``w = (alpha+1)^-1``,
and the cells are visited diagonal by diagonal: for ``x = 0..p-1`` the cells
``(x+i, i)``, ``i = 0..p-1``. Along a diagonal the row point, the column point
and every symbol then advance by one, so each ``p x p`` block is circulant.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .design import ParityCheckMatrix, incidence_matrix, td_from_mols
from .errors import AlphaIsPMinusOne, DimensionMismatch, NonPrimeOrder, ZeroScaleFactor
from .gf import FieldContext
from .latin import build_mols


@dataclass(frozen=True)
class QcLayout:
    p: int
    alphas: tuple
    omega: tuple
    pairs: tuple
    order: np.ndarray  # design-order column index of each QC column

    @property
    def m(self) -> int:
        return len(self.alphas)


def qc_column_order(p: int) -> list[tuple[int, int]]:
    return [((x + i) % p, i) for x in range(p) for i in range(p)]


def qc_transform(ctx: FieldContext, alphas) -> QcLayout:
    if not ctx.is_prime:
        raise NonPrimeOrder(f"NonPrimeOrder: the diagonal layout needs prime order, got {ctx.q}")
    p = ctx.q
    omega, pairs = [], []
    for a in alphas:
        a = int(a)
        if a % p == 0:
            raise ZeroScaleFactor(f"ZeroScaleFactor: alpha={a}")
        if a == p - 1:
            raise AlphaIsPMinusOne(f"AlphaIsPMinusOne: alpha={a} makes alpha+1 zero")
        w = ctx.inv(ctx.add(a, 1))
        omega.append(w)
        pairs.append((ctx.mul(w, a), w))
    order = np.array([x * p + y for x, y in qc_column_order(p)], dtype=np.int64)
    return QcLayout(p, tuple(int(a) for a in alphas), tuple(omega), tuple(pairs), order)


def qc_matrix(ctx: FieldContext, alphas) -> ParityCheckMatrix:
    layout = qc_transform(ctx, alphas)
    h = incidence_matrix(td_from_mols(build_mols(ctx, layout.pairs)))
    return h.permute_columns(layout.order, order="qc")


def verify_circulants(h: ParityCheckMatrix, p: int) -> bool:
    n_rows, n_cols = h.shape
    if n_rows % p or n_cols % p:
        raise DimensionMismatch(f"DimensionMismatch: {n_rows}x{n_cols} is not tiled by {p}x{p}")
    d = h.to_dense()
    blocks = d.reshape(n_rows // p, p, n_cols // p, p).transpose(0, 2, 1, 3)
    shifted = np.roll(blocks, shift=(-1, -1), axis=(2, 3))
    return bool((blocks == shifted).all())
