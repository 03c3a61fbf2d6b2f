"""Admissibility constraints C1..C7 on pairs of reduced scale factors."""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from itertools import combinations

from .errors import InvalidBlockSize, NoneFound, NonPrimeOrder, SameClass, ZeroScaleFactor
from .gf import FieldContext

CONSTRAINTS = ("C1", "C2", "C3", "C4", "C5", "C6", "C7")

# (coefficient of a1^2, a1*a2, a2^2, a1, a2); each expression must be nonzero
_FORMS = {
    "C1": (0, 0, 0, 2, -1),
    "C2": (0, 0, 0, -1, 2),
    "C3": (0, 0, 0, 1, 1),
    "C4": (1, -1, 1, 0, 0),
    "C5": (1, 1, -1, 0, 0),
    "C6": (-1, 1, 1, 0, 0),
    "C7": (1, -3, 1, 0, 0),
}

# label under the swap a1 <-> a2
SWAPPED = {"C1": "C2", "C2": "C1", "C3": "C3", "C4": "C4", "C5": "C6", "C6": "C5", "C7": "C7"}

EXPRESSIONS = {
    "C1": "2*a1 - a2",
    "C2": "2*a2 - a1",
    "C3": "a1 + a2",
    "C4": "a1^2 - a1*a2 + a2^2",
    "C5": "a1^2 + a1*a2 - a2^2",
    "C6": "a2^2 + a1*a2 - a1^2",
    "C7": "a1^2 - 3*a1*a2 + a2^2",
}


@dataclass(frozen=True)
class ConstraintReport:
    q: int
    pair: tuple[int, int]
    values: dict = field(default_factory=dict)  # name -> value of the expression
    verdicts: dict = field(default_factory=dict)  # name -> True when satisfied

    @property
    def violated(self) -> list[str]:
        return [c for c in CONSTRAINTS if not self.verdicts[c]]

    summary = violated

    @property
    def ok(self) -> bool:
        return not self.violated

    def as_row(self) -> dict:
        row = {"q": self.q, "alpha1": self.pair[0], "alpha2": self.pair[1]}
        row.update({c: "ok" if self.verdicts[c] else "VIOLATED" for c in CONSTRAINTS})
        row["violations"] = " ".join(self.violated)
        return row


def _evaluate(ctx: FieldContext, a1: int, a2: int, form) -> int:
    sq1, cross, sq2, lin1, lin2 = form
    return ctx.linear(
        (sq1, ctx.mul(a1, a1)),
        (cross, ctx.mul(a1, a2)),
        (sq2, ctx.mul(a2, a2)),
        (lin1, a1),
        (lin2, a2),
    )


def check_constraints(ctx: FieldContext, alpha1: int, alpha2: int) -> ConstraintReport:
    """Evaluate C1..C7 for the reduced squares ``(alpha1, 1)`` and ``(alpha2, 1)``."""
    for a in (alpha1, alpha2):
        if not 0 <= a < ctx.q:
            raise ValueError(f"{a} is not an element of GF({ctx.q})")
    if alpha1 == 0 or alpha2 == 0:
        raise ZeroScaleFactor(f"ZeroScaleFactor: ({alpha1}, {alpha2})")
    if alpha1 == alpha2:
        raise SameClass(f"SameClass: both squares are L^({alpha1},1)")
    values = {c: _evaluate(ctx, alpha1, alpha2, f) for c, f in _FORMS.items()}
    verdicts = {c: v != 0 for c, v in values.items()}
    return ConstraintReport(ctx.q, (int(alpha1), int(alpha2)), values, verdicts)


def tuple_ok(ctx: FieldContext, alphas) -> bool:
    return all(check_constraints(ctx, a, b).ok for a, b in combinations(alphas, 2))


def find_good_tuples(ctx: FieldContext, m: int, limit: int = 10) -> list[tuple[int, ...]]:
    """Lexicographically first ``m``-tuples ``(1, a2, ..., am)`` that pairwise satisfy C1..C7."""
    if m < 2:
        raise ValueError("m must be at least 2")
    if m > ctx.q - 1:
        raise NoneFound(f"NoneFound: at most {ctx.q - 1} squares exist for q={ctx.q}")
    if ctx.characteristic <= 3:
        warnings.warn(
            f"characteristic {ctx.characteristic} <= 3: the stopping-distance guarantees "
            "behind C1..C7 do not apply",
            stacklevel=2,
        )
    # pairs involving 1 prune the candidate list up front
    cands = [a for a in range(2, ctx.q) if check_constraints(ctx, 1, a).ok]
    good = {a: {b for b in cands if b > a and check_constraints(ctx, a, b).ok} for a in cands}
    out: list[tuple[int, ...]] = []

    def extend(prefix, pool):
        if len(out) >= limit:
            return
        if len(prefix) == m:
            out.append(tuple(prefix))
            return
        for a in pool:
            extend(prefix + [a], [b for b in pool if b in good[a]])
            if len(out) >= limit:
                return

    extend([1], cands)
    if not out:
        raise NoneFound(f"NoneFound: no {m}-tuple satisfies C1..C7 pairwise for q={ctx.q}")
    return out


@dataclass(frozen=True)
class LatticeMapping:
    q: int
    c: int
    pairs: list[tuple[int, int]]
    reduced: list[int]
    reports: list[ConstraintReport]

    @property
    def violated(self) -> list[str]:
        return sorted({v for r in self.reports for v in r.violated})


def lattice_scale_factors(ctx: FieldContext, c: int) -> LatticeMapping:
    """Scale factors ``(q-i, i+1)``, ``i = 1..c-2``, of the ``(q, c)`` lattice code."""
    if not ctx.is_prime:
        raise NonPrimeOrder(f"NonPrimeOrder: lattice codes need prime q, got {ctx.q}")
    q = ctx.q
    if not 3 <= c <= q:
        raise InvalidBlockSize(f"InvalidBlockSize: c={c} outside 3..{q}")
    pairs = [(q - i, i + 1) for i in range(1, c - 1)]
    reduced = [ctx.div(a, b) for a, b in pairs]
    reports = [check_constraints(ctx, a, b) for a, b in combinations(reduced, 2)]
    return LatticeMapping(q, c, pairs, reduced, reports)
