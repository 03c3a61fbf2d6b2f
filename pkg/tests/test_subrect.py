import pytest
from hypothesis import given, settings, strategies as st

import molsldpc as m
from molsldpc.errors import InvalidShift, NotAPolygon, NotCorrelating, NotFull
from molsldpc.latin import LatinSquare
from molsldpc.stopping import (
    CorrelatingFamily,
    Subrectangle,
    duplicate_to_full,
    family_to_configuration,
    is_full,
    polygon_check,
    six_polygon,
    translate,
)
from molsldpc.stopping.subrect import columns_to_family, family_columns, polygon_form

SEED_A = ([(2, 2), (2, 3), (3, 1), (3, 3), (4, 1), (4, 2)], (6, 2))
SEED_B = ([(1, 2), (1, 3), (3, 0), (3, 3), (4, 0), (4, 2)], (2, 3))


@pytest.fixture(scope="module")
def mols7():
    return m.build_mols(m.field_new(7), [(1, 1), (2, 1)])


def seeds(mols, cells):
    return tuple(Subrectangle.from_cells(sq, cells) for sq in mols.squares)


def test_is_full_examples(mols7):
    assert is_full(Subrectangle.from_grid(["ab", "ba"]))
    assert not is_full(Subrectangle(frozenset({(0, 0, 0)})))
    c2 = seeds(mols7, SEED_A[0])[1]
    assert not is_full(c2)
    assert c2.unique_symbols == {3, 6}


def test_polygon_examples():
    f7 = m.field_new(7)
    sq = Subrectangle(frozenset({(0, 0, 1), (0, 1, 2), (1, 1, 4), (1, 0, 3)}))
    assert polygon_check(sq, f7) == 0
    # symbols a, b, b, a along the chain (0,0), (0,1), (1,1), (1,0)
    chain = Subrectangle(frozenset({(0, 0, 3), (0, 1, 5), (1, 1, 5), (1, 0, 3)}))
    assert polygon_check(chain, f7) == 0
    # the intercalate closes only in characteristic 2
    intercalate = Subrectangle.from_grid(["ab", "ba"])
    assert polygon_check(intercalate, f7) != 0
    assert polygon_check(intercalate, m.field_new(8)) == 0
    with pytest.raises(NotAPolygon):
        polygon_check(Subrectangle.from_grid(["abc", "cab"]), f7)
    with pytest.raises(NotAPolygon):
        polygon_check(Subrectangle.from_grid(["ab--", "ba--", "--ab", "--ba"]), f7)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([5, 7, 11, 13]), st.data())
def test_six_polygon_is_full_and_closes(q, data):
    ctx = m.field_new(q)
    sq = LatinSquare(ctx, data.draw(st.integers(1, q - 1)), data.draw(st.integers(1, q - 1)))
    x1, x2, x3 = data.draw(st.lists(st.integers(0, q - 1), min_size=3, max_size=3, unique=True))
    y1 = data.draw(st.integers(0, q - 1))
    try:
        sr = six_polygon(sq, x1, x2, x3, y1)
    except ValueError:
        return
    assert sr.size == 6 and is_full(sr)
    assert polygon_check(sr) == 0
    assert set(polygon_form(sr).values()) <= {-2, -1, 1, 2}


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([5, 7, 9, 13]), st.data())
def test_translate_is_a_group_action(q, data):
    ctx = m.field_new(q)
    sq = LatinSquare(ctx, data.draw(st.integers(1, q - 1)), 1)
    cells = data.draw(st.sets(st.tuples(st.integers(0, q - 1), st.integers(0, q - 1)),
                              min_size=1, max_size=8))
    sr = Subrectangle.from_cells(sq, cells)
    i, j, k, l = (data.draw(st.integers(0, q - 1)) for _ in range(4))
    moved = translate(sr, i, j)
    assert moved.square is sq  # triples were validated against the square
    assert translate(sr, 0, 0) == sr
    assert translate(moved, k, l) == translate(sr, ctx.add(i, k), ctx.add(j, l))
    assert is_full(moved) == is_full(sr)


def test_symbol_preserving_translation():
    sq = LatinSquare(m.field_new(7), 2, 1)
    sr = Subrectangle.from_cells(sq, [(0, 0), (1, 3), (4, 4)])
    moved = translate(sr, 1, 5)
    assert sorted(s for *_, s in moved.triples) == sorted(s for *_, s in sr.triples)


def test_duplication_examples(mols7):
    for (cells, shift), size in ((SEED_A, 10), (SEED_B, 12)):
        c1, c2 = seeds(mols7, cells)
        fam = duplicate_to_full(c1, c2, *shift)
        assert fam.size == size
        assert fam.is_full_correlating()
        assert 6 + len(c2.unique_symbols) <= fam.size <= 12


def test_duplication_errors(mols7):
    c1, c2 = seeds(mols7, SEED_A[0])
    with pytest.raises(InvalidShift):
        duplicate_to_full(c1, c2, 0, 0)
    with pytest.raises(InvalidShift):
        duplicate_to_full(c1, c2, 1, 1)
    with pytest.raises(NotFull):
        duplicate_to_full(c2, c1, 1, 6)
    other = Subrectangle.from_cells(mols7.squares[1], SEED_B[0])
    with pytest.raises(NotCorrelating):
        duplicate_to_full(c1, other, 6, 2)


def test_full_seed_duplicates_to_itself_or_more(mols7):
    sq1, sq2 = mols7.squares
    sr = six_polygon(sq2, 0, 1, 2, 0)
    c1 = Subrectangle.from_cells(sq1, sr.cells)
    if is_full(c1):
        fam = duplicate_to_full(c1, sr, 3, 1)
        assert fam.size >= 6


def test_configuration_examples(code):
    assert family_to_configuration(CorrelatingFamily((Subrectangle.from_grid(["ab", "ba"]),))) \
        == (6, 4)
    mols9 = m.build_mols(m.field_new(9), [(1, 1), (2, 1)])
    h9 = code(9, [1, 2])
    rep = m.enumerate_stopping_sets(h9, 6, witnesses=3)
    for cols in rep.witnesses[6]:
        assert family_to_configuration(columns_to_family(h9, mols9, cols)) == (11, 6)
    mols13 = m.build_mols(m.field_new(13), [(1, 1), (2, 1)])
    wit = m.structural_search_size8(m.field_new(13), 1, 2)
    assert {family_to_configuration(w.family(mols13)) for w in wit if w.kind == 1} == {(16, 8)}


def test_family_columns_round_trip(code):
    mols = m.build_mols(m.field_new(7), [(1, 1), (2, 1)])
    h = code(7, [1, 2])
    fam = CorrelatingFamily.from_cells(mols, [(0, 1), (2, 3), (4, 5)])
    cols = family_columns(fam, h)
    assert columns_to_family(h, mols, cols).cells == fam.cells
    with pytest.raises(NotCorrelating):
        CorrelatingFamily((Subrectangle.from_cells(mols.squares[0], [(0, 0)]),
                           Subrectangle.from_cells(mols.squares[1], [(0, 1)])))
