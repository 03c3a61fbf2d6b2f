import itertools
import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import molsldpc as m
from molsldpc.errors import CapTooLarge
from molsldpc.stopping import (
    LABELLED_PATTERNS,
    Subrectangle,
    brute_force_histogram,
    classify,
    classify_size8,
    is_stopping_set,
    low_weight_codewords,
    maximal_stopping_subset,
    occurring_classes,
    regenerate_catalog,
)
from molsldpc.stopping.enumerate import row_groups


def oracle_histogram(h, max_size):
    """Plain itertools scan over column subsets, with minimality by subset test."""
    dense = h.to_dense().astype(np.int64)
    found = {s: [] for s in range(1, max_size + 1)}
    for s in range(1, max_size + 1):
        for cols in itertools.combinations(range(h.n_cols), s):
            deg = dense[:, cols].sum(axis=1)
            if not (deg == 1).any():
                found[s].append(frozenset(cols))
    smaller = []
    minimal = {}
    for s in range(1, max_size + 1):
        minimal[s] = sum(1 for S in found[s] if not any(T < S for T in smaller))
        smaller.extend(found[s])
    return {s: len(v) for s, v in found.items()}, minimal


@pytest.mark.parametrize("q,alphas,cap", [(4, [1], 6), (5, [1], 6), (4, [1, 2], 6), (5, [1, 2], 5)])
def test_enumerator_matches_oracle(code, q, alphas, cap):
    h = code(q, alphas)
    hist, minimal = oracle_histogram(h, cap)
    for symmetry in ("orbit", "none"):
        rep = m.enumerate_stopping_sets(h, cap, symmetry=symmetry)
        assert rep.histogram == hist
        assert rep.minimal_histogram == minimal
    assert brute_force_histogram(h, cap) == hist


def test_enumerator_matches_kernel_brute_force(code):
    h = code(7, [1, 3])
    rep = m.enumerate_stopping_sets(h, 6, symmetry="none")
    assert rep.histogram == brute_force_histogram(h, 6)


def test_report_examples(code):
    assert m.enumerate_stopping_sets(code(5, [1]), 6).stopping_distance == 6
    assert m.enumerate_stopping_sets(code(4, [1]), 6).stopping_distance == 4
    r12 = m.enumerate_stopping_sets(code(13, [1, 2]), 9)
    r13 = m.enumerate_stopping_sets(code(13, [1, 3]), 9)
    assert r12.count(8) > 0
    assert r13.count(8) == r13.count(9) == 0
    assert r13.stopping_distance is None
    assert json.loads(r13.to_json())["stopping_distance"] == ">9"
    for q in (8, 9):
        rep = m.enumerate_stopping_sets(code(q, [1, 2]), 5)
        assert all(v == 0 for v in rep.histogram.values())


def test_witnesses_are_stopping_sets(code):
    h = code(9, [1, 2])
    rep = m.enumerate_stopping_sets(h, 6, witnesses=4)
    assert len(rep.witnesses[6]) == 4
    for cols in rep.witnesses[6]:
        assert len(cols) == 6 and is_stopping_set(h, cols)
    d = rep.to_dict(minimal_only=True)
    assert "minimal_histogram" not in d and d["histogram"]["6"] == rep.minimal_histogram[6]


def test_modes_and_workers_agree(code):
    h = code(13, [1, 2])
    ref = m.enumerate_stopping_sets(h, 8, symmetry="orbit")
    assert ref.mode == "orbit"
    for workers in (1, 3):
        rep = m.enumerate_stopping_sets(h, 8, symmetry="none", workers=workers, witnesses=2)
        assert rep.mode == "generic"
        assert rep.histogram == ref.histogram
        assert rep.minimal_histogram == ref.minimal_histogram


def test_orbit_refused_without_symmetry(code):
    bare = m.ParityCheckMatrix.from_dense(code(5, [1]).to_dense())
    assert m.enumerate_stopping_sets(bare, 4).mode == "generic"
    with pytest.raises(ValueError):
        m.enumerate_stopping_sets(bare, 4, symmetry="orbit")


def test_cap_guard(code):
    with pytest.raises(CapTooLarge):
        m.enumerate_stopping_sets(code(5, [1]), 13)
    with pytest.raises(ValueError):
        m.enumerate_stopping_sets(code(5, [1]), 0)


def test_row_groups_are_proper_colouring(code):
    h = code(7, [1, 2])
    g = row_groups(h)
    for c in range(h.n_cols):
        rows = h.column(c)
        assert len(set(g[rows].tolist())) == len(rows)


def test_codewords_are_stopping_sets(code):
    h = code(4, [1])
    words = low_weight_codewords(h, 6)
    stops = brute_force_histogram(h, 6)
    assert all(words[s] <= stops[s] for s in words)
    assert words[4] == 12  # every size-4 stopping set of this code is a codeword


@settings(max_examples=40, deadline=None)
@given(st.sets(st.integers(0, 48), max_size=30))
def test_maximal_stopping_subset(erased):
    h = m.code(7, [1, 2])
    res = maximal_stopping_subset(h, sorted(erased))
    assert set(res) <= erased
    assert not res or is_stopping_set(h, res)
    # maximality: every stopping set inside the erasures lies inside the residual
    rng = np.random.default_rng(len(erased))
    for _ in range(5):
        sub = [c for c in erased if rng.random() < 0.7]
        if sub and is_stopping_set(h, sub):
            assert set(sub) <= set(res)


# --- catalog -----------------------------------------------------------------------

def test_labelled_patterns_are_full():
    for label, grid in LABELLED_PATTERNS.items():
        sr = Subrectangle.from_grid(grid)
        assert m.is_full(sr), label
        assert classify(sr, "drawing") == label


def test_catalog_drawing_reproduces_labels():
    cat = regenerate_catalog(7, "drawing")
    assert len(cat) == 14
    labels = {classify(Subrectangle.from_grid(g), "drawing") for g in cat.values()}
    assert labels == set(LABELLED_PATTERNS)


def test_catalog_coarser_equivalences():
    iso = regenerate_catalog(7, "isotopy")
    tr = regenerate_catalog(7, "transpose")
    assert len(iso) == 9 and len(tr) == 8
    merged = {"e": "d", "f": "d", "h": "g", "j": "i", "n": "m"}
    for label, grid in LABELLED_PATTERNS.items():
        assert classify(Subrectangle.from_grid(grid), "isotopy") == merged.get(label, label)


@pytest.mark.parametrize("q", [7, 11])
def test_occurrence_large_characteristic(q):
    sq = m.LatinSquare(m.field_new(q), 2, 1)
    assert set(occurring_classes(sq, 4)) == set()
    assert set(occurring_classes(sq, 5)) == set()
    assert set(occurring_classes(sq, 6)) == {"b"}
    assert set(occurring_classes(sq, 7)) == {"k"}


@pytest.mark.parametrize("q,size,expected", [
    (4, 4, {"a"}), (8, 6, {"b", "d"}), (8, 7, {"l"}), (9, 6, {"b", "c", "g", "i"}), (9, 7, {"k"}),
])
def test_occurrence_small_characteristic(q, size, expected):
    assert set(occurring_classes(m.LatinSquare(m.field_new(q), 1, 1), size)) == expected


# --- size-8 structure --------------------------------------------------------------

def test_structural_search_examples():
    f13 = m.field_new(13)
    assert m.structural_search_size8(f13, 1, 2)
    assert not m.structural_search_size8(f13, 1, 3)


@pytest.mark.slow
def test_structural_search_q29():
    f29 = m.field_new(29)
    assert not m.structural_search_size8(f29, 1, 3)
    assert m.structural_search_size8(f29, 1, 2)


def test_structural_witnesses_match_enumeration(code):
    ctx = m.field_new(13)
    mols = m.build_mols(ctx, [(1, 1), (2, 1)])
    h = code(13, [1, 2])
    wit = m.structural_search_size8(ctx, 1, 2)
    rep = m.enumerate_stopping_sets(h, 8, witnesses=20)
    assert len(wit) == rep.count(8) == 2535
    index = {tuple(map(int, c)): i for i, c in enumerate(h.cells)}
    sample = wit[:: max(1, len(wit) // 50)]
    for w in sample:
        assert w.family(mols).is_full_correlating()
        assert is_stopping_set(h, [index[c] for c in w.cells])
        assert classify_size8(mols, w.cells) == w.kind
    for cols in rep.witnesses[8]:
        cells = [tuple(map(int, h.cells[c])) for c in cols]
        assert classify_size8(mols, cells) in (1, 2)
