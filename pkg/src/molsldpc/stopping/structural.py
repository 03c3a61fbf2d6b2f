"""Size-8 full-correlating pairs found by solving their cell equations directly.

Two cell patterns (rows ``x1..x4``, columns ``y1..y4``) are known to carry all
size-8 stopping sets of two-square codes in characteristic above 3. Each cell
holds a symbol label in the first square and one in the second; two cells with
the same label give the linear equation ``a*x_i + y_j - a*x_k - y_l = 0``.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations, product

import numpy as np

from ..gf import FieldContext, nullspace
from ..latin import LatinSquare, MolsSet
from .subrect import CorrelatingFamily

# (row, column, label in first square, label in second square)
SIZE8_TYPES = {
    1: [
        (0, 0, "a", "g"), (0, 1, "b", "d"),
        (1, 1, "c", "z"), (1, 2, "d", "g"),
        (2, 2, "b", "e"), (2, 3, "a", "z"),
        (3, 0, "c", "e"), (3, 3, "d", "d"),
    ],
    2: [
        (0, 0, "a", "g"), (0, 1, "b", "d"),
        (1, 0, "c", "z"), (1, 1, "d", "e"),
        (2, 2, "b", "z"), (2, 3, "d", "g"),
        (3, 2, "a", "e"), (3, 3, "c", "d"),
    ],
}

MAX_SOLUTIONS = 10**6


@dataclass(frozen=True)
class Size8Witness:
    kind: int  # pattern type, 1 or 2
    swapped: bool  # True when the first pattern square is the second code square
    rows: tuple
    cols: tuple
    cells: tuple  # the eight (x, y) cells, sorted

    def family(self, mols: MolsSet) -> CorrelatingFamily:
        return CorrelatingFamily.from_cells(mols, self.cells)


def size8_equations(ctx: FieldContext, kind: int, a1: int, a2: int) -> list[list[int]]:
    """Coefficient rows over ``(x1..x4, y1..y4)`` for one pattern and role assignment."""
    cells = SIZE8_TYPES[kind]
    rows = []
    for layer, alpha in ((2, a1), (3, a2)):
        for c1, c2 in combinations(cells, 2):
            if c1[layer] != c2[layer]:
                continue
            v = [0] * 8
            for (x, y, *_), sign in ((c1, 1), (c2, -1)):
                coef = alpha if sign == 1 else ctx.neg(alpha)
                v[x] = ctx.add(v[x], coef)
                v[4 + y] = ctx.add(v[4 + y], 1 if sign == 1 else ctx.neg(1))
            rows.append(v)
    return rows


def _solutions(ctx: FieldContext, kind: int, a1: int, a2: int):
    """Solutions with ``x1 = y1 = 0`` and pairwise distinct rows and columns."""
    eqs = size8_equations(ctx, kind, a1, a2)
    fixed = [[1 if k == idx else 0 for k in range(8)] for idx in (0, 4)]
    basis = nullspace(ctx, eqs + fixed)
    dim = len(basis)
    if ctx.q**dim > MAX_SOLUTIONS:
        raise RuntimeError(f"solution space of dimension {dim} is too large to list")
    add, mul = ctx.add_table, ctx.mul_table
    for coeffs in product(range(ctx.q), repeat=dim):
        v = np.zeros(8, dtype=np.int64)
        for c, b in zip(coeffs, basis):
            v = add[v, mul[c, b]].astype(np.int64)
        xs, ys = v[:4], v[4:]
        if len(set(xs.tolist())) == 4 and len(set(ys.tolist())) == 4:
            yield tuple(xs.tolist()), tuple(ys.tolist())


def structural_search_size8(ctx: FieldContext, alpha1: int, alpha2: int) -> list[Size8Witness]:
    """All placements of the two size-8 patterns in ``(L^(alpha1), L^(alpha2))``.

    Both role orders are tried, and every solution is completed with all ``q^2``
    cell translations. Placements with the same cell set are reported once.
    """
    seen = set()
    out = []
    for kind in sorted(SIZE8_TYPES):
        for swapped, (a, b) in ((False, (alpha1, alpha2)), (True, (alpha2, alpha1))):
            for xs, ys in _solutions(ctx, kind, a, b):
                for i, j in product(range(ctx.q), repeat=2):
                    rx = tuple(ctx.add(x, i) for x in xs)
                    ry = tuple(ctx.add(y, j) for y in ys)
                    cells = tuple(sorted((rx[x], ry[y]) for x, y, *_ in SIZE8_TYPES[kind]))
                    if cells in seen:
                        continue
                    seen.add(cells)
                    out.append(Size8Witness(kind, swapped, rx, ry, cells))
    return out


def classify_size8(mols: MolsSet, cells) -> int | None:
    """Pattern type (1 or 2) of a size-8 full-correlating cell set, or ``None``.

    The cell set matches a type when some ordering of its rows and columns maps
    it onto the pattern with label-equal cells carrying equal symbols, in either
    role order.
    """
    cells = sorted(cells)
    if len(cells) != 8 or mols.m != 2:
        return None
    rows = sorted({x for x, _ in cells})
    cols = sorted({y for _, y in cells})
    if len(rows) != 4 or len(cols) != 4:
        return None
    sq = mols.squares
    for kind, pattern in SIZE8_TYPES.items():
        shape = {(x, y): (l1, l2) for x, y, l1, l2 in pattern}
        for rp in permutations(rows):
            for cp in permutations(cols):
                labels = {}
                ok = True
                for x, y in cells:
                    key = (rp.index(x), cp.index(y))
                    if key not in shape:
                        ok = False
                        break
                    labels[(x, y)] = shape[key]
                if not ok:
                    continue
                for first, second in ((sq[0], sq[1]), (sq[1], sq[0])):
                    if _labels_match(labels, first, 0) and _labels_match(labels, second, 1):
                        return kind
    return None


def _labels_match(labels: dict, square: LatinSquare, layer: int) -> bool:
    sym_of = {}
    for (x, y), lab in labels.items():
        s = square.cell(x, y)
        if sym_of.setdefault(lab[layer], s) != s:
            return False
    return True
