"""Subrectangles of Latin squares, translations and correlating families."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations

import numpy as np

from ..errors import InvalidShift, NotAPolygon, NotCorrelating, NotFull
from ..gf import FieldContext
from ..latin import LatinSquare, MolsSet


@dataclass(frozen=True, eq=False)
class Subrectangle:
    """A set of ``(row, column, symbol)`` triples.

    With ``square`` set every triple must agree with the square's cells. With
    ``square=None`` the triples form an abstract pattern and symbols are plain labels.
    """

    triples: frozenset
    square: LatinSquare | None = None

    def __post_init__(self):
        trip = frozenset((int(x), int(y), int(s)) for x, y, s in self.triples)
        object.__setattr__(self, "triples", trip)
        cells = [(x, y) for x, y, _ in trip]
        if len(set(cells)) != len(cells):
            raise ValueError("two triples share a cell")
        if self.square is not None:
            for x, y, s in trip:
                if self.square.cell(x, y) != s:
                    raise ValueError(f"triple {(x, y, s)} disagrees with {self.square!r}")

    @classmethod
    def from_cells(cls, square: LatinSquare, cells) -> "Subrectangle":
        return cls(frozenset((x, y, square.cell(x, y)) for x, y in cells), square)

    @classmethod
    def from_grid(cls, grid, blank="-") -> "Subrectangle":
        """Abstract pattern from rows of labels, e.g. ``["ab-", "-ca", "c-b"]``."""
        labels: dict = {}
        trip = []
        for x, row in enumerate(grid):
            for y, lab in enumerate(row.split() if " " in row else row):
                if lab != blank:
                    trip.append((x, y, labels.setdefault(lab, len(labels))))
        return cls(frozenset(trip))

    def __len__(self):
        return len(self.triples)

    def __eq__(self, other):
        return isinstance(other, Subrectangle) and self.triples == other.triples

    def __hash__(self):
        return hash(self.triples)

    def __repr__(self):
        return f"Subrectangle({sorted(self.triples)})"

    @property
    def size(self) -> int:
        return len(self.triples)

    @cached_property
    def cells(self) -> frozenset:
        return frozenset((x, y) for x, y, _ in self.triples)

    @property
    def rows(self) -> set:
        return {x for x, _, _ in self.triples}

    @property
    def cols(self) -> set:
        return {y for _, y, _ in self.triples}

    @property
    def symbols(self) -> set:
        return {s for _, _, s in self.triples}

    @property
    def unique_symbols(self) -> set:
        counts = Counter(s for _, _, s in self.triples)
        return {s for s, n in counts.items() if n == 1}

    def sorted_triples(self) -> list:
        return sorted(self.triples)


def is_full(sr: Subrectangle) -> bool:
    """Every row, column and symbol in use occurs in at least two triples."""
    if not sr.triples:
        return False
    for pos in range(3):
        counts = Counter(t[pos] for t in sr.triples)
        if min(counts.values()) < 2:
            return False
    return True


def polygon_order(sr: Subrectangle) -> list:
    """Triples ordered ``t1, t2, ...`` with ``t1, t2`` sharing a row, ``t2, t3`` a column, and so on."""
    trip = sr.triples
    n = len(trip)
    by_row: dict = {}
    by_col: dict = {}
    for t in trip:
        by_row.setdefault(t[0], []).append(t)
        by_col.setdefault(t[1], []).append(t)
    if n < 4 or n % 2 or any(len(v) != 2 for v in by_row.values()) \
            or any(len(v) != 2 for v in by_col.values()):
        raise NotAPolygon(f"NotAPolygon: {n} cells do not use every row and column exactly twice")
    start = min(trip)
    order = [start]
    cur = start
    for step in range(1, n):
        group = by_row[cur[0]] if step % 2 else by_col[cur[1]]
        cur = group[0] if group[1] == cur else group[1]
        order.append(cur)
    if order[-1][1] != start[1] or len(set(order)) != n:
        raise NotAPolygon("NotAPolygon: the row/column chain splits into several cycles")
    return order


def polygon_check(sr: Subrectangle, ctx: FieldContext | None = None) -> int:
    """Alternating symbol sum ``s1 - s2 + s3 - ...`` over GF(q) along the polygon."""
    if ctx is None:
        if sr.square is None:
            raise ValueError("abstract pattern: pass the field explicitly")
        ctx = sr.square.ctx
    acc = 0
    for t, (_, _, s) in enumerate(polygon_order(sr)):
        acc = ctx.add(acc, s) if t % 2 == 0 else ctx.sub(acc, s)
    return acc


def polygon_form(sr: Subrectangle) -> dict:
    """Integer coefficient of each symbol label in the alternating sum (labels with 0 dropped)."""
    coeff: Counter = Counter()
    for t, (_, _, s) in enumerate(polygon_order(sr)):
        coeff[s] += 1 if t % 2 == 0 else -1
    return {s: c for s, c in coeff.items() if c}


def translate(sr: Subrectangle, i: int, j: int) -> Subrectangle:
    """Shift every cell by ``(i, j)``; symbols move by ``alpha*i + beta*j``."""
    sq = sr.square
    if sq is None:
        raise ValueError("translation needs the underlying square")
    ctx = sq.ctx
    ds = ctx.add(ctx.mul(sq.alpha, i), ctx.mul(sq.beta, j))
    return Subrectangle(
        frozenset((ctx.add(x, i), ctx.add(y, j), ctx.add(s, ds)) for x, y, s in sr.triples), sq
    )


def union(a: Subrectangle, b: Subrectangle) -> Subrectangle:
    if a.square is not None and b.square is not None and not a.square.same_as(b.square):
        raise ValueError("subrectangles live in different squares")
    return Subrectangle(a.triples | b.triples, a.square or b.square)


@dataclass(frozen=True, eq=False)
class CorrelatingFamily:
    """One subrectangle per square, all over the same cell positions."""

    members: tuple

    def __post_init__(self):
        members = tuple(self.members)
        object.__setattr__(self, "members", members)
        if not members:
            raise NotCorrelating("NotCorrelating: empty family")
        cells = members[0].cells
        for sr in members[1:]:
            if sr.cells != cells:
                raise NotCorrelating("NotCorrelating: members cover different cells")

    @classmethod
    def from_cells(cls, mols: MolsSet, cells) -> "CorrelatingFamily":
        return cls(tuple(Subrectangle.from_cells(sq, cells) for sq in mols.squares))

    @property
    def cells(self) -> frozenset:
        return self.members[0].cells

    @property
    def size(self) -> int:
        return len(self.cells)

    def is_orthogonal(self) -> bool:
        """No symbol pair is repeated between any two members."""
        for a, b in combinations(self.members, 2):
            sa = {(x, y): s for x, y, s in a.triples}
            sb = {(x, y): s for x, y, s in b.triples}
            pairs = [(sa[c], sb[c]) for c in sa]
            if len(set(pairs)) != len(pairs):
                return False
        return True

    def is_full_correlating(self) -> bool:
        return self.is_orthogonal() and all(is_full(sr) for sr in self.members)


def family_to_configuration(fam: CorrelatingFamily) -> tuple[int, int]:
    """``(points, lines)`` of the configuration the family induces in the design."""
    first = fam.members[0]
    points = len(first.rows) + len(first.cols) + sum(len(sr.symbols) for sr in fam.members)
    return points, fam.size


def family_columns(fam: CorrelatingFamily, h) -> list[int]:
    """Column indices of ``h`` whose cells form the family."""
    index = {(int(x), int(y)): c for c, (x, y) in enumerate(h.cells)}
    return sorted(index[c] for c in fam.cells)


def columns_to_family(h, mols: MolsSet, cols) -> CorrelatingFamily:
    return CorrelatingFamily.from_cells(mols, [tuple(map(int, h.cells[c])) for c in cols])


def duplicate_to_full(c1: Subrectangle, c2: Subrectangle, i: int, j: int) -> CorrelatingFamily:
    """Union of a correlating pair with its translate by ``(i, j)``, where ``alpha2*i + beta2*j = 0``."""
    if c1.square is None or c2.square is None:
        raise ValueError("both subrectangles need their squares")
    ctx = c2.square.ctx
    if (i % ctx.q, j % ctx.q) == (0, 0):
        raise InvalidShift("InvalidShift: (0, 0) is not a proper shift")
    if ctx.add(ctx.mul(c2.square.alpha, i), ctx.mul(c2.square.beta, j)) != 0:
        raise InvalidShift(f"InvalidShift: ({i}, {j}) moves the symbols of {c2.square!r}")
    if not is_full(c1):
        raise NotFull("NotFull: the seed in the first square is not full")
    if c1.cells != c2.cells:
        raise NotCorrelating("NotCorrelating: seeds cover different cells")
    psi1 = union(c1, translate(c1, i, j))
    psi2 = union(c2, translate(c2, i, j))
    return CorrelatingFamily((psi1, psi2))


def six_polygon(square: LatinSquare, x1: int, x2: int, x3: int, y1: int) -> Subrectangle:
    """The full 6-cell polygon on rows ``x1, x2, x3`` anchored at column ``y1``.

    The remaining columns are ``y2 = a*(x3 - x2) + y1`` and
    ``y3 = a*(x1 - x2) + y1`` with ``a = alpha/beta``; cells ``(x1,y1), (x2,y3)`` and ``(x1,y2), (x3,y3)``
    and ``(x2,y2), (x3,y1)`` share symbols. Raises ``ValueError`` when rows or
    columns collide.
    """
    ctx = square.ctx
    a = ctx.div(square.alpha, square.beta)
    # alpha*x + beta*y = beta*(a*x + y), so equal symbols do not depend on beta
    y2 = ctx.add(ctx.mul(a, ctx.sub(x3, x2)), y1)
    y3 = ctx.add(ctx.mul(a, ctx.sub(x1, x2)), y1)
    if len({x1, x2, x3}) < 3 or len({y1, y2, y3}) < 3:
        raise ValueError("degenerate polygon")
    cells = [(x1, y1), (x1, y2), (x2, y2), (x2, y3), (x3, y1), (x3, y3)]
    return Subrectangle.from_cells(square, cells)


def subrectangle_from_array(arr: np.ndarray, cells) -> Subrectangle:
    return Subrectangle(frozenset((x, y, int(arr[x, y])) for x, y in cells))
