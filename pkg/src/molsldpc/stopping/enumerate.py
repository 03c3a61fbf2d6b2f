"""Exhaustive stopping-set enumeration over a parity-check matrix."""
from __future__ import annotations

import json
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .. import _kernels
from ..design import ParityCheckMatrix, has_translation_symmetry
from ..errors import CapTooLarge

log = logging.getLogger(__name__)

MAX_CAP = 12


@dataclass
class StoppingSetReport:
    matrix_id: str
    cap: int
    histogram: dict  # size -> number of stopping sets
    minimal_histogram: dict  # size -> number containing no smaller stopping set
    witnesses: dict  # size -> list of column lists
    mode: str = "generic"
    nodes: int = 0
    meta: dict = field(default_factory=dict)

    @property
    def stopping_distance(self) -> int | None:
        """Smallest size with a stopping set, or ``None`` if none up to ``cap``."""
        sizes = [s for s, n in self.histogram.items() if n]
        return min(sizes) if sizes else None

    def count(self, size: int, minimal: bool = False) -> int:
        hist = self.minimal_histogram if minimal else self.histogram
        return hist.get(size, 0)

    def to_dict(self, minimal_only: bool = False) -> dict:
        d = self.stopping_distance
        hist = self.minimal_histogram if minimal_only else self.histogram
        out = dict(self.meta)
        out.update(
            matrix_id=self.matrix_id,
            cap=self.cap,
            mode=self.mode,
            histogram={str(s): int(n) for s, n in sorted(hist.items())},
            stopping_distance=d if d is not None else f">{self.cap}",
            witnesses={str(s): w for s, w in sorted(self.witnesses.items()) if w},
        )
        if not minimal_only:
            out["minimal_histogram"] = {
                str(s): int(n) for s, n in sorted(self.minimal_histogram.items())
            }
        return out

    def to_json(self, minimal_only: bool = False) -> str:
        return json.dumps(self.to_dict(minimal_only), indent=2, sort_keys=True) + "\n"


def is_stopping_set(h: ParityCheckMatrix, cols) -> bool:
    """Nonempty and every row meeting ``cols`` meets it at least twice."""
    cols = list(cols)
    if not cols:
        return False
    deg = np.bincount(np.concatenate([h.column(c) for c in cols]), minlength=h.n_rows)
    return not (deg == 1).any()


def row_groups(h: ParityCheckMatrix) -> np.ndarray:
    """Greedy colouring of rows so that rows sharing a column get different colours."""
    color = np.full(h.n_rows, -1, dtype=np.int64)
    for r in range(h.n_rows):
        taken = {int(color[r2]) for c in h.row(r) for r2 in h.column(c) if color[r2] >= 0}
        g = 0
        while g in taken:
            g += 1
        color[r] = g
    return color


def _run(h, groups, n_groups, kmax, cap, anchors, exclude_below, n_witness, minimal):
    return _kernels.enumerate_stopping(
        h.col_ptr, h.col_idx, h.row_ptr, h.row_idx, groups, n_groups, kmax, cap,
        np.asarray(anchors, dtype=np.int64), int(exclude_below), n_witness, minimal,
    )


def enumerate_stopping_sets(
    h: ParityCheckMatrix,
    cap: int,
    *,
    witnesses: int = 5,
    minimal: bool = True,
    symmetry: str = "auto",
    workers: int = 1,
    max_cap: int = MAX_CAP,
) -> StoppingSetReport:
    """Count every stopping set of size ``1..cap``.

    ``symmetry="orbit"`` (chosen by ``"auto"`` when all cell translations are
    verified automorphisms of ``h``) counts only the sets containing column 0 and
    scales: a group acting regularly on the ``N`` columns gives
    ``count_s = N * count0_s / s``. Witnesses then all contain column 0.
    ``symmetry="none"`` searches every anchor column; ``workers`` splits the
    anchors into contiguous ranges and the merged result does not depend on it.
    """
    if cap < 1:
        raise ValueError("cap must be at least 1")
    if cap > max_cap:
        raise CapTooLarge(f"CapTooLarge: cap {cap} exceeds the limit {max_cap}")
    if symmetry not in ("auto", "orbit", "none"):
        raise ValueError(f"unknown symmetry mode {symmetry!r}")
    orbit = symmetry == "orbit" or (symmetry == "auto" and has_translation_symmetry(h))
    if symmetry == "orbit" and not has_translation_symmetry(h):
        raise ValueError("matrix has no verified translation symmetry")

    groups = row_groups(h)
    n_groups = int(groups.max()) + 1 if h.n_rows else 1
    kmax = int(h.column_weights().max()) if h.n_cols else 1
    N = h.n_cols
    counts = np.zeros(cap + 1, dtype=np.int64)
    mins = np.zeros(cap + 1, dtype=np.int64)
    wit: dict = {s: [] for s in range(1, cap + 1)}
    nodes = 0

    if orbit:
        parts = [([0], 0)]
    else:
        bounds = np.linspace(0, N, max(1, min(workers, N)) + 1).astype(int)
        parts = [(np.arange(lo, hi), lo) for lo, hi in zip(bounds[:-1], bounds[1:]) if hi > lo]

    def job(part):
        anchors, lo = part
        return _run(h, groups, n_groups, kmax, cap, anchors, lo, witnesses, minimal)

    if workers > 1 and len(parts) > 1:
        with ThreadPoolExecutor(workers) as pool:
            results = list(pool.map(job, parts))
    else:
        results = [job(p) for p in parts]

    for c, mn, w, wmin, nw, nd in results:
        counts += c
        mins += mn
        nodes += int(nd)
        for s in range(1, cap + 1):
            for t in range(int(nw[s])):
                if len(wit[s]) < witnesses:
                    wit[s].append(sorted(int(v) for v in w[s, t, :s]))

    if orbit:
        sizes = np.arange(cap + 1)
        for arr in (counts, mins):
            scaled = arr[1:] * N
            if (scaled % sizes[1:]).any():
                raise RuntimeError("orbit counts are not divisible; symmetry check is wrong")
            arr[1:] = scaled // sizes[1:]
    log.debug("enumeration cap=%d mode=%s nodes=%d", cap, "orbit" if orbit else "generic", nodes)
    return StoppingSetReport(
        matrix_id=h.digest(),
        cap=cap,
        histogram={s: int(counts[s]) for s in range(1, cap + 1)},
        minimal_histogram={s: int(mins[s]) if minimal else 0 for s in range(1, cap + 1)},
        witnesses={s: v for s, v in wit.items()},
        mode="orbit" if orbit else "generic",
        nodes=nodes,
        meta={"q": h.q, "m": h.m, "pairs": [list(p) for p in h.pairs]},
    )


def brute_force_histogram(h: ParityCheckMatrix, max_size: int) -> dict:
    """Independent check: test every column subset of size ``<= max_size``."""
    c = _kernels.brute_force_counts(h.col_ptr, h.col_idx, h.n_rows, max_size, False)
    return {s: int(c[s]) for s in range(1, max_size + 1)}


def low_weight_codewords(h: ParityCheckMatrix, max_weight: int) -> dict:
    """Number of nonzero codewords (column sets with all row degrees even) per weight."""
    c = _kernels.brute_force_counts(h.col_ptr, h.col_idx, h.n_rows, max_weight, True)
    return {s: int(c[s]) for s in range(1, max_weight + 1)}


def maximal_stopping_subset(h: ParityCheckMatrix, cols) -> list[int]:
    """Largest stopping set inside ``cols`` (what peeling leaves behind)."""
    erased = np.zeros(h.n_cols, dtype=np.bool_)
    erased[list(cols)] = True
    cnt = np.zeros(h.n_rows, dtype=np.int64)
    stack = np.empty(2 * h.n_rows + 1, dtype=np.int64)
    touched = np.empty(h.n_rows + 1, dtype=np.int64)
    _kernels.peel_erasures(h.col_ptr, h.col_idx, h.row_ptr, h.row_idx, erased, cnt, stack, touched)
    return np.flatnonzero(erased).tolist()
