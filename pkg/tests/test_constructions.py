from itertools import combinations
from math import comb

import pytest

import reference_data
from sharedpda import BudgetExceeded, check_pda, construct_b, construct_mn, symbol_stats
from sharedpda.constructions import const_b_params, id_to_tuple, parse_label, tuple_to_id


def test_mn_nine_six_parameters():
    pda = construct_mn(9, 6)
    assert pda.params == (9, 84, 56, 36)


def test_mn_two_caches():
    assert construct_mn(2, 1).grid == ((None, 0), (0, None))


def test_mn_four_two_by_enumeration():
    pda = construct_mn(4, 2)
    assert pda.params == (4, 6, 3, 4)
    subsets3 = list(combinations(range(4), 3))
    for j, T in enumerate(combinations(range(4), 2)):
        for k in range(4):
            expected = None if k in T else subsets3.index(tuple(sorted((*T, k))))
            assert pda.grid[j][k] == expected
    assert set(symbol_stats(pda).occurrences.values()) == {3}


@pytest.mark.parametrize("n,t", [(n, t) for n in range(2, 8) for t in range(1, n)])
def test_mn_family(n, t):
    pda = construct_mn(n, t)
    assert pda.params == (n, comb(n, t), comb(n - 1, t - 1), comb(n, t + 1))
    assert symbol_stats(pda).regularity == t + 1
    assert pda.memory_ratio == pytest.approx(t / n)


@pytest.mark.parametrize("n,t", [(1, 0), (3, 0), (3, 3), (4, 5)])
def test_mn_rejects_bad_t(n, t):
    with pytest.raises(ValueError):
        construct_mn(n, t)


def test_construction_b_reproduces_reference():
    pda = construct_b(3, 2)
    assert pda.params == (9, 18, 12, 9)
    assert list(pda.row_labels) == reference_data.CONST_B_ROWS
    assert list(pda.column_labels) == reference_data.CONST_B_COLS
    assert [list(r) for r in pda.grid] == reference_data.CONST_B_CELLS


@pytest.mark.parametrize("q,m", [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (3, 3), (4, 1), (4, 2), (5, 2)])
def test_construction_b_family(q, m):
    pda = construct_b(q, m)
    assert check_pda(pda.grid).ok
    assert pda.params == (q * (m + 1), (q - 1) * q**m, (q - 1) ** 2 * q ** (m - 1), q**m)
    assert symbol_stats(pda).regularity == (q - 1) * (m + 1)
    assert const_b_params(pda) == (q, m)
    for k, label in enumerate(pda.column_labels):
        u, v = parse_label(label)
        column = [c for c in pda.column(k) if c is not None]
        assert len(column) == len(set(column))
        tuples = {id_to_tuple(s, q, m) for s in column}
        if u < m:
            expected = {t for t in map(lambda s: id_to_tuple(s, q, m), range(q**m)) if t[u] != v}
        else:
            expected = {t for t in map(lambda s: id_to_tuple(s, q, m), range(q**m)) if sum(t) % q != v}
        assert tuples == expected


def test_construction_b_smallest():
    assert construct_b(2, 1).params == (4, 2, 1, 2)


def test_construction_b_q2_m2_regular():
    pda = construct_b(2, 2)
    assert pda.params == (6, 4, 2, 4)
    assert set(symbol_stats(pda).occurrences.values()) == {3}


def test_tuple_ids_round_trip():
    for s in range(27):
        assert tuple_to_id(id_to_tuple(s, 3, 3), 3) == s


def test_size_cap(monkeypatch):
    monkeypatch.setenv("SHAREDPDA_CELL_BUDGET", "100")
    with pytest.raises(BudgetExceeded):
        construct_b(3, 3)
    with pytest.raises(BudgetExceeded):
        construct_mn(12, 6)


@pytest.mark.parametrize("q,m", [(1, 2), (3, 0)])
def test_construction_b_bounds(q, m):
    with pytest.raises(ValueError):
        construct_b(q, m)
