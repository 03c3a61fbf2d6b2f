import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import molsldpc as m
from molsldpc.design import (
    check_pair_coverage,
    from_alist,
    has_translation_symmetry,
    mols_from_td,
    to_alist,
)
from molsldpc.errors import AlistFormatError, InvalidTruncation

ORDERS = [4, 5, 7, 8, 9, 11, 13]


def brute_girth(dense):
    """Shortest Tanner cycle by BFS over the explicit bipartite graph."""
    r, c = dense.shape
    adj = [[] for _ in range(r + c)]
    for i, j in zip(*np.nonzero(dense)):
        adj[i].append(r + j)
        adj[r + j].append(i)
    best = 0
    for s in range(r + c):
        dist = {s: 0}
        parent = {s: -1}
        queue = [s]
        for u in queue:
            for v in adj[u]:
                if v not in dist:
                    dist[v] = dist[u] + 1
                    parent[v] = u
                    queue.append(v)
                elif parent[u] != v:
                    length = dist[u] + dist[v] + 1
                    best = length if not best else min(best, length)
    return best


def mols_sets(q):
    ctx = m.field_new(q)
    yield [1]
    yield [1, 2] if q > 2 else [1]
    yield list(range(1, min(q, 4)))


@pytest.mark.parametrize("q", ORDERS)
def test_incidence_structure(q):
    for alphas in mols_sets(q):
        h = m.code(q, alphas)
        k = len(alphas) + 2
        assert h.shape == (k * q, q * q)
        assert (h.column_weights() == k).all()
        assert (h.row_weights() == q).all()
        assert h.max_column_overlap() <= 1
        assert m.girth(h) == 6
        td = m.td_from_mols(m.build_mols(m.field_new(q), [(a, 1) for a in alphas]))
        assert check_pair_coverage(td)
        back = mols_from_td(td)
        for arr, sq in zip(back, td.mols.squares):
            assert np.array_equal(arr, sq.array)


def test_girth_matches_brute_force():
    for q, alphas in ((4, [1]), (5, [1, 2])):
        h = m.code(q, alphas)
        assert m.girth(h) == brute_girth(h.to_dense())
    four_cycle = m.ParityCheckMatrix.from_dense([[1, 1, 0], [1, 1, 1]])
    assert m.girth(four_cycle) == 4 == brute_girth(four_cycle.to_dense())
    tree = m.ParityCheckMatrix.from_dense([[1, 1, 0], [0, 1, 1]])
    assert m.girth(tree) == 0


def test_pair_coverage_detects_breakage():
    td = m.td_from_mols(m.build_mols(m.field_new(5), [(1, 1)]))
    blocks = td.blocks.copy()
    blocks[0, 2], blocks[1, 2] = blocks[1, 2], blocks[0, 2]
    bad = m.TransversalDesign(td.k, td.n, blocks)
    assert not check_pair_coverage(bad)


def test_alist_round_trip(tmp_path):
    h = m.code(7, [1, 3])
    path = tmp_path / "h.alist"
    m.write_alist(h, path)
    h2 = m.read_alist(path)
    assert np.array_equal(h.to_dense(), h2.to_dense())
    assert to_alist(h2) == path.read_text()
    with pytest.raises(AlistFormatError):
        from_alist("3 2\n2 3\n1 1\n")


def test_truncate():
    h = m.code(5, [2], qc=True)
    t = m.truncate(h, 3)
    assert t.shape == (15, 15)
    assert (t.row_weights() == 3).all()
    with pytest.raises(InvalidTruncation):
        m.truncate(m.code(5, [1, 2]), 3)
    with pytest.raises(InvalidTruncation):
        m.truncate(h, 0)
    assert m.truncate(h, 5) is h


@pytest.mark.parametrize("q", [4, 5, 9])
def test_translation_symmetry(q):
    assert has_translation_symmetry(m.code(q, [1, 2] if q > 3 else [1]))


def test_translation_symmetry_absent_without_metadata():
    h = m.code(5, [1, 2])
    bare = m.ParityCheckMatrix.from_dense(h.to_dense())
    assert not has_translation_symmetry(bare)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([5, 7, 8, 9, 11]), st.data())
def test_design_invariants_random_pairs(q, data):
    alphas = data.draw(st.lists(st.integers(1, q - 1), min_size=1, max_size=3, unique=True))
    h = m.code(q, alphas)
    assert h.max_column_overlap() <= 1
    dense = h.to_dense()
    # every row pair from different groups shares exactly one column
    k = len(alphas) + 2
    overlap = dense.astype(int) @ dense.T.astype(int)
    for g1, g2 in itertools.combinations(range(k), 2):
        blk = overlap[g1 * q:(g1 + 1) * q, g2 * q:(g2 + 1) * q]
        assert (blk == 1).all()
