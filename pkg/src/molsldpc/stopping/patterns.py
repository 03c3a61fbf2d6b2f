"""Full subrectangle patterns up to relabeling: canonical forms, catalog search, occurrence scans.

Three equivalences are supported:

* ``"isotopy"``: permute rows, permute columns, rename symbols.
* ``"transpose"``: as above, and also swap rows with columns.
* ``"drawing"``: fix each cell shape to one drawing (its canonical shape reached
  by the first row/column ordering that produces it) and rename symbols only.
  Fillings related by a symmetry of the drawing stay distinct.
"""
from __future__ import annotations

from collections import Counter
from functools import lru_cache
from itertools import combinations, permutations

from ..latin import LatinSquare
from .subrect import Subrectangle, is_full

# Labelled full patterns with at most 7 cells; rows are strings, '-' is an empty cell.
LABELLED_PATTERNS = {
    "a": ["ab", "ba"],
    "b": ["ab-", "-ca", "c-b"],
    "c": ["ab-", "-ab", "b-a"],
    "d": ["ab-", "-ac", "c-b"],
    "e": ["ab-", "-ca", "b-c"],
    "f": ["ab-", "-cb", "c-a"],
    "g": ["abc", "cab"],
    "h": ["abc", "bca"],
    "i": ["ac", "ba", "cb"],
    "j": ["ab", "bc", "ca"],
    "k": ["ab-", "bca", "c-b"],
    "l": ["ab-", "bac", "c-b"],
    "m": ["ac-", "bac", "c-b"],
    "n": ["ab-", "bac", "c-a"],
}


def _relabel(cells) -> tuple:
    names: dict = {}
    return tuple((r, c, names.setdefault(s, len(names))) for r, c, s in cells)


def canonical_form(sr, transpose: bool = False) -> tuple:
    """Lexicographically smallest relabeled triple list over all row/column orderings."""
    trip = list(sr.triples if isinstance(sr, Subrectangle) else sr)
    views = [trip]
    if transpose:
        views.append([(y, x, s) for x, y, s in trip])
    best = None
    for view in views:
        rows = sorted({t[0] for t in view})
        cols = sorted({t[1] for t in view})
        for rp in permutations(range(len(rows))):
            rmap = dict(zip(rows, rp))
            for cp in permutations(range(len(cols))):
                cmap = dict(zip(cols, cp))
                cells = sorted((rmap[x], cmap[y], s) for x, y, s in view)
                form = _relabel(cells)
                if best is None or form < best:
                    best = form
    return best


def form_to_grid(form) -> list[str]:
    n_rows = 1 + max(r for r, _, _ in form)
    n_cols = 1 + max(c for _, c, _ in form)
    grid = [["-"] * n_cols for _ in range(n_rows)]
    for r, c, s in form:
        grid[r][c] = "abcdefghijklmnopqrstuvwxyz"[s]
    return ["".join(row) for row in grid]


def drawing_form(sr) -> tuple:
    """Canonical shape with symbols renamed in cell order; see ``"drawing"`` above."""
    trip = list(sr.triples if isinstance(sr, Subrectangle) else sr)
    rows = sorted({t[0] for t in trip})
    cols = sorted({t[1] for t in trip})
    best = best_maps = None
    for rp in permutations(range(len(rows))):
        for cp in permutations(range(len(cols))):
            rmap, cmap = dict(zip(rows, rp)), dict(zip(cols, cp))
            shape = sorted((rmap[x], cmap[y]) for x, y, _ in trip)
            if best is None or shape < best:
                best, best_maps = shape, (rmap, cmap)
    rmap, cmap = best_maps
    return _relabel(sorted((rmap[x], cmap[y], s) for x, y, s in trip))


def pattern_form(sr, equivalence: str = "isotopy") -> tuple:
    if equivalence == "drawing":
        return drawing_form(sr)
    if equivalence in ("isotopy", "transpose"):
        return canonical_form(sr, transpose=equivalence == "transpose")
    raise ValueError(f"unknown equivalence {equivalence!r}")


@lru_cache(maxsize=None)
def labelled_forms(equivalence: str = "isotopy") -> dict:
    """Form -> first label with that form in the labelled catalog."""
    out = {}
    for label, grid in LABELLED_PATTERNS.items():
        out.setdefault(pattern_form(Subrectangle.from_grid(grid), equivalence), label)
    return out


def classify(sr, equivalence: str = "isotopy") -> str | None:
    return labelled_forms(equivalence).get(pattern_form(sr, equivalence))


@lru_cache(maxsize=None)
def shapes(n_rows: int, n_cols: int, size: int) -> tuple:
    """Cell subsets of an ``n_rows x n_cols`` grid using every row and column at least twice."""
    grid = [(r, c) for r in range(n_rows) for c in range(n_cols)]
    out = []
    for cells in combinations(grid, size):
        rc = Counter(r for r, _ in cells)
        cc = Counter(c for _, c in cells)
        if len(rc) == n_rows and len(cc) == n_cols and min(rc.values()) >= 2 \
                and min(cc.values()) >= 2:
            out.append(cells)
    return tuple(out)


def _fill(cells):
    """All Latin-consistent symbol fillings (symbols named in order of first use) with every symbol used twice."""
    n = len(cells)
    sym = [-1] * n

    def rec(k, n_sym):
        if k == n:
            counts = Counter(sym)
            if min(counts.values()) >= 2:
                yield tuple(sym)
            return
        # remaining cells must be able to double every singleton symbol
        singles = sum(1 for v in Counter(sym[:k]).values() if v == 1)
        if singles > n - k:
            return
        r, c = cells[k]
        used = {sym[t] for t in range(k) if cells[t][0] == r or cells[t][1] == c}
        for s in range(n_sym + 1):
            if s not in used:
                sym[k] = s
                yield from rec(k + 1, max(n_sym, s + 1))
        sym[k] = -1

    yield from rec(0, 0)


def regenerate_catalog(max_size: int = 7, equivalence: str = "isotopy") -> dict:
    """Every full Latin-consistent pattern with at most ``max_size`` cells, one per class.

    Returns ``{form: grid}`` ordered by size then form.
    """
    found = set()
    for size in range(4, max_size + 1):
        for n_rows in range(2, size // 2 + 1):
            for n_cols in range(2, size // 2 + 1):
                if n_rows * n_cols < size:
                    continue
                for cells in shapes(n_rows, n_cols, size):
                    for sym in _fill(cells):
                        trip = [(r, c, s) for (r, c), s in zip(cells, sym)]
                        found.add(pattern_form(trip, equivalence))
    ordered = sorted(found, key=lambda f: (len(f), f))
    return {f: form_to_grid(f) for f in ordered}


def occurring_classes(square: LatinSquare, size: int, equivalence: str = "isotopy") -> Counter:
    """Classes of full subrectangles with ``size`` cells occurring in ``square``.

    Translations preserve the class, so only subrectangles whose row set and
    column set both contain 0 are scanned. Keys are labels from
    :data:`LABELLED_PATTERNS`, or canonical forms for unlabelled classes; values
    count the scanned occurrences.
    """
    q = square.order
    arr = square.array
    found: Counter = Counter()
    cache: dict = {}
    for n_rows in range(2, size // 2 + 1):
        for n_cols in range(2, size // 2 + 1):
            masks = shapes(n_rows, n_cols, size) if n_rows * n_cols >= size else ()
            if not masks:
                continue
            for rrest in combinations(range(1, q), n_rows - 1):
                rows = (0,) + rrest
                for crest in combinations(range(1, q), n_cols - 1):
                    cols = (0,) + crest
                    for mask in masks:
                        trip = [(r, c, int(arr[rows[r], cols[c]])) for r, c in mask]
                        sr = Subrectangle(frozenset(trip))
                        if not is_full(sr):
                            continue
                        key = _relabel(sorted(trip))
                        if key not in cache:
                            form = pattern_form(trip, equivalence)
                            cache[key] = labelled_forms(equivalence).get(form, form)
                        found[cache[key]] += 1
    return found
