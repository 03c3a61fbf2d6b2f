import warnings

import pytest
from hypothesis import given, strategies as st

import molsldpc as m
from molsldpc.constraints import EXPRESSIONS, SWAPPED, check_constraints, tuple_ok
from molsldpc.errors import InvalidBlockSize, NoneFound, NonPrimeOrder, SameClass, ZeroScaleFactor

VIOLATIONS_Q13 = {2: ["C1"], 3: [], 4: ["C4"], 5: [], 6: [], 7: ["C2"], 8: [], 9: [], 10: ["C4"],
             11: [], 12: ["C3"]}


def evaluate(expr, a1, a2, q):
    return eval(expr.replace("^", "**"), {"a1": a1, "a2": a2}) % q


def test_q13_violations():
    ctx = m.field_new(13)
    for a2, expected in VIOLATIONS_Q13.items():
        assert check_constraints(ctx, 1, a2).violated == expected


def test_errors():
    ctx = m.field_new(13)
    with pytest.raises(ZeroScaleFactor):
        check_constraints(ctx, 0, 3)
    with pytest.raises(SameClass):
        check_constraints(ctx, 4, 4)


@pytest.mark.parametrize("q", [5, 7, 11, 13, 17, 29])
def test_forms_match_expressions(q):
    ctx = m.field_new(q)
    for a1 in range(1, q):
        for a2 in range(1, q):
            if a1 == a2:
                continue
            rep = check_constraints(ctx, a1, a2)
            for name, expr in EXPRESSIONS.items():
                assert rep.values[name] == evaluate(expr, a1, a2, q)


@given(st.sampled_from([7, 11, 13, 17, 19]), st.data())
def test_swap_symmetry(q, data):
    ctx = m.field_new(q)
    a1, a2 = data.draw(st.lists(st.integers(1, q - 1), min_size=2, max_size=2, unique=True))
    fwd = set(check_constraints(ctx, a1, a2).violated)
    back = set(check_constraints(ctx, a2, a1).violated)
    assert {SWAPPED[c] for c in fwd} == back


def test_find_good_tuples():
    assert (1, 3, 9) in m.find_good_tuples(m.field_new(41), 3, limit=10**4)
    assert (1, 3) in m.find_good_tuples(m.field_new(29), 2, limit=100)
    good13 = m.find_good_tuples(m.field_new(13), 2, limit=100)
    assert (1, 2) not in good13
    assert set(good13) == {(1, a) for a, v in VIOLATIONS_Q13.items() if not v}
    for t in m.find_good_tuples(m.field_new(31), 3):
        assert t[0] == 1 and tuple_ok(m.field_new(31), t)
    with pytest.raises(NoneFound):
        m.find_good_tuples(m.field_new(5), 4)


def test_find_good_tuples_warns_small_characteristic():
    with pytest.warns(UserWarning):
        try:
            m.find_good_tuples(m.field_new(9), 2)
        except NoneFound:
            pass
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        m.find_good_tuples(m.field_new(13), 2)


def test_lattice():
    lat = m.lattice_scale_factors(m.field_new(5), 4)
    assert lat.pairs == [(4, 2), (3, 3)]
    assert lat.reduced == [2, 1]
    assert "C2" in lat.violated
    single = m.lattice_scale_factors(m.field_new(5), 3)
    assert single.pairs == [(4, 2)] and single.reduced == [2] and single.reports == []
    ctx = m.field_new(47)
    big = m.lattice_scale_factors(ctx, 4)
    assert big.reduced == [46 * pow(2, -1, 47) % 47, 45 * pow(3, -1, 47) % 47]
    assert len(big.reports) == 1
    with pytest.raises(InvalidBlockSize):
        m.lattice_scale_factors(m.field_new(5), 6)
    with pytest.raises(NonPrimeOrder):
        m.lattice_scale_factors(m.field_new(9), 3)
