import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import reference_data
from corpus import random_pda, random_sorted_profile
from sharedpda import (build_gpda, check_gpda, construct_mn, load_from_gpda, load_from_pda,
                       reduce_to_pda, tau_values)


def max_replicas(gpda):
    top = {}
    for row in gpda.grid:
        for c in row:
            if c is not None:
                top[c[0]] = max(top.get(c[0], 0), c[1])
    return [top.get(s, 0) for s in range(gpda.symbol_count)]


def test_reference_gpda_cell_for_cell(P):
    g = build_gpda(P, reference_data.PROFILE_A)
    assert [list(r) for r in g.grid] == reference_data.G_CELLS
    assert list(g.user_to_cache) == reference_data.USER_TO_CACHE_A
    assert max_replicas(g) == [5, 5, 4, 4, 3, 3]
    assert sum(max_replicas(g)) == 24


def test_reference_gpda_reordered(P_prime):
    g = build_gpda(P_prime, reference_data.PROFILE_A)
    assert [list(r) for r in g.grid] == reference_data.G_PRIME_CELLS
    assert sum(max_replicas(g)) == 21


def test_all_ones_profile_round_trip(P):
    g = build_gpda(P, [1] * 6)
    assert all(c[1] == 1 for row in g.grid for c in row if c is not None)
    assert reduce_to_pda(g).grid == P.grid


def test_mn_round_trip():
    pda = construct_mn(4, 2)
    assert reduce_to_pda(build_gpda(pda, [1] * 4)).grid == pda.grid


def test_reduce_rejects_higher_replicas(G):
    with pytest.raises(ValueError, match="replica index"):
        reduce_to_pda(G)


def test_zero_load_caches_drop_columns(P):
    g = build_gpda(P, (3, 0, 2, 0, 0, 1))
    assert g.columns == 6
    assert set(g.user_to_cache) == {0, 2, 5}


def test_profile_errors(P):
    with pytest.raises(ValueError):
        build_gpda(P, (1, 1))
    with pytest.raises(ValueError):
        build_gpda(P, (1, 1, 1, 1, 1, -1))
    with pytest.raises(ValueError):
        build_gpda(P, (0,) * 6)


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 10**9))
def test_expansion_properties(seed):
    rng = random.Random(seed)
    pda = random_pda(rng, 150)
    L = random_sorted_profile(rng, pda.columns)
    g = build_gpda(pda, L)
    assert check_gpda(g.grid, g.user_to_cache).ok
    assert g.columns == sum(L)
    for k, cache in enumerate(g.user_to_cache):
        assert g.star_rows(k) == pda.star_rows(cache)
    # bridge identity between the two load formulas
    tau = tau_values(pda)
    replicas = max_replicas(g)
    for s in range(pda.symbol_count):
        expected = L[tau[s] - 1]
        assert (replicas[s] if s < len(replicas) else 0) == expected
    assert load_from_gpda(g).fraction == load_from_pda(pda, L).fraction


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10**9))
def test_commutes_with_column_permutation(seed):
    rng = random.Random(seed)
    pda = random_pda(rng, 120)
    L = random_sorted_profile(rng, pda.columns)
    perm = list(range(pda.columns))
    rng.shuffle(perm)
    # the user attached to position p now gets source column perm[p]
    moved = build_gpda(pda.permute_columns(perm), L)
    direct = build_gpda(pda, _loads_at_source(L, perm))
    by_cache_moved = {perm[c]: moved.column(k) for k, c in enumerate(moved.user_to_cache)}
    by_cache_direct = {c: direct.column(k) for k, c in enumerate(direct.user_to_cache)}
    for c in by_cache_moved:
        assert g_stars(by_cache_moved[c]) == g_stars(by_cache_direct[c])
    assert sorted(_symbol_users(moved, perm)) == sorted(_symbol_users(direct, None))


def _loads_at_source(L, perm):
    loads = [0] * len(L)
    for p, k in enumerate(perm):
        loads[k] = L[p]
    return loads


def g_stars(column):
    return tuple(c is None for c in column)


def _symbol_users(g, perm):
    """(source column, row, symbol, replica) for every entry."""
    out = []
    for k, cache in enumerate(g.user_to_cache):
        src = perm[cache] if perm is not None else cache
        for j, c in enumerate(g.column(k)):
            if c is not None:
                out.append((src, j, c[0], c[1]))
    return out
