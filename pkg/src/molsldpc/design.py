"""Transversal designs from MOLS and their incidence matrices as LDPC parity-check matrices.

Point encoding for TD(m+2, q): rows ``0..q-1``, columns ``q..2q-1`` and the
symbols of square ``t`` at ``(t+2)q .. (t+3)q-1``. The block of cell
``(x, y)`` is ``{x, q+y, 2q+L_1[x,y], ..., (m+1)q+L_m[x,y]}``.
"""
from __future__ import annotations

import hashlib
import io
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from . import _kernels
from .errors import AlistFormatError, InvalidTruncation
from .gf import field_new
from .latin import MolsSet


@dataclass(frozen=True, eq=False)
class TransversalDesign:
    k: int
    n: int
    blocks: np.ndarray  # (n*n, k); row b is the block of cell (b // n, b % n)
    mols: MolsSet | None = None

    @property
    def num_points(self) -> int:
        return self.k * self.n

    @property
    def num_blocks(self) -> int:
        return self.blocks.shape[0]

    @property
    def groups(self) -> list[range]:
        return [range(g * self.n, (g + 1) * self.n) for g in range(self.k)]


def td_from_mols(mols: MolsSet) -> TransversalDesign:
    q = mols.q
    k = mols.m + 2
    x, y = np.divmod(np.arange(q * q), q)
    blocks = np.empty((q * q, k), dtype=np.int64)
    blocks[:, 0] = x
    blocks[:, 1] = q + y
    for t, sq in enumerate(mols.squares):
        blocks[:, t + 2] = (t + 2) * q + sq.array[x, y]
    return TransversalDesign(k, q, blocks, mols)


def mols_from_td(td: TransversalDesign) -> list[np.ndarray]:
    """Invert the MOLS -> TD correspondence, returning one array per square."""
    n = td.n
    out = [np.full((n, n), -1, dtype=np.int64) for _ in range(td.k - 2)]
    for block in td.blocks:
        pts = sorted(int(p) for p in block)
        x, y = pts[0], pts[1] - n
        for t in range(td.k - 2):
            out[t][x, y] = pts[t + 2] - (t + 2) * n
    return out


def check_pair_coverage(td: TransversalDesign) -> bool:
    """Every point pair lies in exactly one group or exactly one block."""
    P = td.num_points
    inc = np.zeros((P, td.num_blocks), dtype=np.int64)
    inc[td.blocks.ravel(), np.repeat(np.arange(td.num_blocks), td.k)] = 1
    together = inc @ inc.T
    group = np.arange(P) // td.n
    together += group[:, None] == group[None, :]
    off = ~np.eye(P, dtype=bool)
    return bool((together[off] == 1).all())


@dataclass(frozen=True, eq=False)
class ParityCheckMatrix:
    """Sparse binary matrix kept both column-major and row-major (CSR on each axis).

    ``q``, ``m``, ``pairs``, ``order`` and ``cells`` are construction metadata;
    they are empty for matrices read from foreign alist files.
    """

    n_rows: int
    n_cols: int
    col_ptr: np.ndarray
    col_idx: np.ndarray
    row_ptr: np.ndarray
    row_idx: np.ndarray
    q: int | None = None
    m: int | None = None
    pairs: tuple = ()
    order: str | None = None
    cells: np.ndarray | None = None
    truncated: int | None = None
    extra: dict = field(default_factory=dict)

    @classmethod
    def from_columns(cls, columns, n_rows: int, **meta) -> "ParityCheckMatrix":
        columns = [sorted(int(r) for r in col) for col in columns]
        for c, col in enumerate(columns):
            if len(set(col)) != len(col):
                raise ValueError(f"column {c} lists a row twice")
            if col and not (0 <= col[0] and col[-1] < n_rows):
                raise ValueError(f"column {c} has a row index out of range")
        col_ptr = np.zeros(len(columns) + 1, dtype=np.int64)
        col_ptr[1:] = np.cumsum([len(c) for c in columns])
        col_idx = np.array([r for col in columns for r in col], dtype=np.int64)
        rows = [[] for _ in range(n_rows)]
        for c, col in enumerate(columns):
            for r in col:
                rows[r].append(c)
        row_ptr = np.zeros(n_rows + 1, dtype=np.int64)
        row_ptr[1:] = np.cumsum([len(r) for r in rows])
        row_idx = np.array([c for r in rows for c in r], dtype=np.int64)
        return cls(n_rows, len(columns), col_ptr, col_idx, row_ptr, row_idx, **meta)

    @classmethod
    def from_dense(cls, dense, **meta) -> "ParityCheckMatrix":
        dense = np.asarray(dense) % 2
        cols = [np.flatnonzero(dense[:, c]) for c in range(dense.shape[1])]
        return cls.from_columns(cols, dense.shape[0], **meta)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.n_rows, self.n_cols)

    def column(self, c: int) -> np.ndarray:
        return self.col_idx[self.col_ptr[c]:self.col_ptr[c + 1]]

    def row(self, r: int) -> np.ndarray:
        return self.row_idx[self.row_ptr[r]:self.row_ptr[r + 1]]

    def column_weights(self) -> np.ndarray:
        return np.diff(self.col_ptr)

    def row_weights(self) -> np.ndarray:
        return np.diff(self.row_ptr)

    def to_dense(self) -> np.ndarray:
        out = np.zeros(self.shape, dtype=np.uint8)
        out[self.col_idx, np.repeat(np.arange(self.n_cols), self.column_weights())] = 1
        return out

    def max_column_overlap(self) -> int:
        """Largest number of rows shared by two distinct columns."""
        d = self.to_dense().astype(np.int64)
        g = d.T @ d
        np.fill_diagonal(g, 0)
        return int(g.max()) if g.size else 0

    def columns_list(self) -> list[list[int]]:
        return [self.column(c).tolist() for c in range(self.n_cols)]

    def meta(self) -> dict:
        return {
            "q": self.q,
            "m": self.m,
            "pairs": [list(p) for p in self.pairs],
            "order": self.order,
            "truncate": self.truncated,
        }

    def same_structure(self, other: "ParityCheckMatrix") -> bool:
        return (
            self.shape == other.shape
            and np.array_equal(self.col_ptr, other.col_ptr)
            and np.array_equal(self.col_idx, other.col_idx)
        )

    def digest(self) -> str:
        return hashlib.sha256(to_alist(self).encode()).hexdigest()

    def permute_columns(self, perm, **meta) -> "ParityCheckMatrix":
        perm = np.asarray(perm)
        cols = [self.column(int(c)) for c in perm]
        kw = dict(q=self.q, m=self.m, pairs=self.pairs, order=None, cells=None)
        if self.cells is not None:
            kw["cells"] = self.cells[perm]
        kw.update(meta)
        return ParityCheckMatrix.from_columns(cols, self.n_rows, **kw)


def incidence_matrix(td: TransversalDesign) -> ParityCheckMatrix:
    """Design-order incidence matrix: column ``x*q + y`` is the block of cell ``(x, y)``."""
    q = td.n
    cells = np.stack(np.divmod(np.arange(q * q), q), axis=1)
    meta = {}
    if td.mols is not None:
        meta = dict(q=q, m=td.mols.m, pairs=tuple(td.mols.pairs), order="design", cells=cells)
    return ParityCheckMatrix.from_columns(td.blocks, td.num_points, **meta)


def tanner_girth(h: ParityCheckMatrix) -> int:
    """Length of the shortest cycle of the Tanner graph, or 0 when acyclic."""
    return int(_kernels.girth(h.col_ptr, h.col_idx, h.row_ptr, h.row_idx, h.n_cols, h.n_rows))


girth = tanner_girth


def truncate(h: ParityCheckMatrix, a: int) -> ParityCheckMatrix:
    """Keep the first ``a`` column groups (``a*q`` columns).

    Only meaningful when every group of ``q`` consecutive columns is a parallel
    class (the QC diagonal order is); any truncation whose row weights are not
    all equal to ``a`` is rejected.
    """
    q = h.q
    if q is None:
        raise InvalidTruncation("InvalidTruncation: matrix carries no group size q")
    if not isinstance(a, (int, np.integer)) or not 1 <= a <= q:
        raise InvalidTruncation(f"InvalidTruncation: a={a} outside 1..{q}")
    if h.n_cols != q * q:
        raise InvalidTruncation("InvalidTruncation: matrix is already truncated")
    if a == q:
        return h
    keep = a * q
    cols = [h.column(c) for c in range(keep)]
    cells = None if h.cells is None else h.cells[:keep]
    out = ParityCheckMatrix.from_columns(
        cols, h.n_rows, q=q, m=h.m, pairs=h.pairs, order=h.order, cells=cells, truncated=int(a)
    )
    if not (out.row_weights() == a).all():
        raise InvalidTruncation(
            f"InvalidTruncation: column order {h.order!r} is not group-aligned; "
            f"row weights after keeping {keep} columns are not all {a}"
        )
    return out


# --- translation automorphisms -------------------------------------------------

def translation_permutations(h: ParityCheckMatrix, i: int, j: int):
    """Row and column permutations induced by the cell shift ``(x, y) -> (x+i, y+j)``.

    Returns ``None`` when the metadata cannot describe the shift or the shifted
    cell falls outside the matrix.
    """
    if h.q is None or h.cells is None or not h.pairs:
        return None
    q = h.q
    ctx = field_new(q)
    k = len(h.pairs) + 2
    if h.n_rows != k * q:
        return None
    row_perm = np.empty(h.n_rows, dtype=np.int64)
    shifts = [i, j] + [ctx.add(ctx.mul(a, i), ctx.mul(b, j)) for a, b in h.pairs]
    for g, s in enumerate(shifts):
        row_perm[g * q:(g + 1) * q] = g * q + ctx.add_table[np.arange(q), s]
    index = {(int(x), int(y)): c for c, (x, y) in enumerate(h.cells)}
    col_perm = np.empty(h.n_cols, dtype=np.int64)
    for c, (x, y) in enumerate(h.cells):
        tgt = index.get((ctx.add(int(x), i), ctx.add(int(y), j)))
        if tgt is None:
            return None
        col_perm[c] = tgt
    return row_perm, col_perm


def is_automorphism(h: ParityCheckMatrix, row_perm, col_perm) -> bool:
    for c in range(h.n_cols):
        mapped = np.sort(row_perm[h.column(c)])
        if not np.array_equal(mapped, h.column(int(col_perm[c]))):
            return False
    return True


def has_translation_symmetry(h: ParityCheckMatrix) -> bool:
    """True when all ``q^2`` cell translations are verified automorphisms of ``h``.

    The translation group acts regularly on the columns, so it is enough to check
    a generating set: shifts by the additive basis elements ``p^t`` in each coordinate.
    """
    if h.q is None or h.cells is None or h.n_cols != h.q * h.q:
        return False
    ctx = field_new(h.q)
    basis = [ctx.characteristic**t for t in range(ctx.exponent)]
    for b in basis:
        for i, j in ((b, 0), (0, b)):
            perms = translation_permutations(h, i, j)
            if perms is None or not is_automorphism(h, *perms):
                return False
    return True


# --- alist I/O ---------------------------------------------------------------------

def to_alist(h: ParityCheckMatrix) -> str:
    """MacKay alist text with 1-based indices, zero-padded to the maximum weight."""
    cw, rw = h.column_weights(), h.row_weights()
    mc = int(cw.max()) if h.n_cols else 0
    mr = int(rw.max()) if h.n_rows else 0
    out = io.StringIO()
    out.write(f"{h.n_cols} {h.n_rows}\n{mc} {mr}\n")
    out.write(" ".join(map(str, cw)) + "\n")
    out.write(" ".join(map(str, rw)) + "\n")
    for c in range(h.n_cols):
        idx = (h.column(c) + 1).tolist() + [0] * (mc - int(cw[c]))
        out.write(" ".join(map(str, idx)) + "\n")
    for r in range(h.n_rows):
        idx = (h.row(r) + 1).tolist() + [0] * (mr - int(rw[r]))
        out.write(" ".join(map(str, idx)) + "\n")
    return out.getvalue()


def from_alist(text: str, **meta) -> ParityCheckMatrix:
    lines = [ln.split() for ln in text.splitlines() if ln.strip()]
    try:
        n, m = map(int, lines[0][:2])
        mc, mr = map(int, lines[1][:2])
        cw = list(map(int, lines[2]))
        rw = list(map(int, lines[3]))
        col_lines = lines[4:4 + n]
        row_lines = lines[4 + n:4 + n + m]
    except (IndexError, ValueError) as exc:
        raise AlistFormatError(f"AlistFormatError: malformed header ({exc})") from None
    if len(cw) != n or len(rw) != m or len(col_lines) != n or len(row_lines) != m:
        raise AlistFormatError("AlistFormatError: counts in header do not match body")
    cols = []
    for c, ln in enumerate(col_lines):
        idx = [int(t) - 1 for t in ln if int(t) != 0]
        if len(idx) != cw[c] or len(idx) > mc:
            raise AlistFormatError(f"AlistFormatError: column {c + 1} weight mismatch")
        cols.append(idx)
    h = ParityCheckMatrix.from_columns(cols, m, **meta)
    for r, ln in enumerate(row_lines):
        idx = sorted(int(t) - 1 for t in ln if int(t) != 0)
        if idx != h.row(r).tolist() or len(idx) != rw[r] or len(idx) > mr:
            raise AlistFormatError(f"AlistFormatError: row {r + 1} disagrees with column lists")
    return h


def write_alist(h: ParityCheckMatrix, path) -> None:
    Path(path).write_text(to_alist(h))


def read_alist(path, **meta) -> ParityCheckMatrix:
    return from_alist(Path(path).read_text(), **meta)


def with_meta(h: ParityCheckMatrix, **meta) -> ParityCheckMatrix:
    return replace(h, **meta)
