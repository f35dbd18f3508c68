import random
from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from corpus import random_pda, random_sorted_profile
from sharedpda import (build_gpda, construct_b, construct_mn, load_const_b_ordered,
                       load_const_b_unordered, load_from_gpda, load_from_pda, load_mn_baseline,
                       tau_values, validate_gpda)
from sharedpda.rate import LoadValue, format_decimal, load_mn_subsets

import reference_data


def test_tau_small_array(P):
    assert list(tau_values(P).values()) == [1, 1, 2, 2, 3, 3]


def test_tau_single_column():
    from sharedpda import validate_pda

    pda = validate_pda([[None], [0], [1]])
    assert tau_values(pda) == {0: 1, 1: 1}


def test_reference_loads(P, P_prime, profile_a):
    assert load_from_pda(P, profile_a) == LoadValue(24, 3)
    assert load_from_pda(P_prime, profile_a) == LoadValue(21, 3)
    L = profile_a.loads
    assert load_from_pda(P_prime, profile_a).messages == 2 * L[0] + L[1] + L[2] + L[3] + L[4]


def test_gpda_loads(G, profile_a):
    assert load_from_gpda(G) == LoadValue(24, 3)
    g_prime = validate_gpda(reference_data.G_PRIME_CELLS, reference_data.USER_TO_CACHE_A)
    assert load_from_gpda(g_prime) == LoadValue(21, 3)


def test_all_ones_gpda_load_is_s_over_f(P):
    assert load_from_gpda(build_gpda(P, [1] * 6)).fraction == Fraction(6, 3)


def test_const_b_32_unordered_load(profile_ex2):
    # 30*6 + 25*3 = 255
    load = load_from_pda(construct_b(3, 2), profile_ex2)
    assert load == LoadValue(255, 18)
    assert load_const_b_unordered(3, 2, profile_ex2) == load


def test_closed_form_ordered_const_b_32(profile_ex2):
    load = load_const_b_ordered(3, 2, profile_ex2)
    assert load == LoadValue(30 * 6 + 25 * 2 + 10 * 1, 18)
    assert load.decimal() == "13.333"


def test_closed_forms_small():
    assert load_const_b_ordered(2, 1, (2, 1, 1, 1)).fraction == Fraction(3, 2)
    assert load_const_b_unordered(2, 1, (2, 1, 1, 1)).fraction == Fraction(3, 2)
    assert load_from_pda(construct_b(2, 1), (2, 1, 1, 1)).fraction == Fraction(3, 2)


def test_closed_forms_uniform_profile_coincide():
    for q, m in [(2, 1), (2, 2), (3, 2), (4, 1)]:
        L = [7] * (q * (m + 1))
        assert load_const_b_ordered(q, m, L).fraction == load_const_b_unordered(q, m, L).fraction


def test_mn_baseline_nine_six(profile_ex2):
    load = load_mn_baseline(9, 6, profile_ex2)
    assert load == LoadValue(1035, 84)
    assert load.decimal() == "12.321"
    assert load_mn_subsets(9, 6, profile_ex2) == load


def test_mn_uniform_profile():
    from math import comb

    for n, t in [(4, 1), (5, 2), (6, 3)]:
        assert load_mn_baseline(n, t, [3] * n).fraction == Fraction(3 * comb(n, t + 1), comb(n, t))


def test_mn_small_two_ways():
    assert load_mn_subsets(4, 2, (2, 1, 1, 1)) == load_mn_baseline(4, 2, (2, 1, 1, 1))
    assert load_mn_subsets(4, 2, (2, 1, 1, 1)) == LoadValue(2 + 2 + 2 + 1, 6)  # three 3-subsets contain cache 1


def test_unsorted_profile_rejected(P):
    with pytest.raises(ValueError, match="not sorted"):
        load_from_pda(P, (1, 2, 3, 4, 5, 6))


def test_dimension_mismatch(P):
    with pytest.raises(ValueError):
        load_from_pda(P, (3, 2, 1))


@pytest.mark.parametrize("value,expected", [
    (Fraction(240, 18), "13.333"), (Fraction(275, 18), "15.278"), (Fraction(1035, 84), "12.321"),
    (Fraction(1, 8000), "0.000"), (Fraction(3, 2000), "0.002"), (Fraction(5, 2000), "0.002"),
    (Fraction(7), "7.000"),
])
def test_decimal_half_even(value, expected):
    assert format_decimal(value) == expected


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_three_routes_agree_on_mn(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 6)
    t = rng.randint(1, n - 1)
    L = random_sorted_profile(rng, n)
    pda = construct_mn(n, t)
    assert load_from_pda(pda, L) == load_from_gpda(build_gpda(pda, L)) == load_mn_subsets(n, t, L)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.data())
def test_monotone_in_each_load(seed, data):
    rng = random.Random(seed)
    pda = random_pda(rng, 80)
    L = list(random_sorted_profile(rng, pda.columns))
    p = data.draw(st.integers(0, pda.columns - 1))
    bumped = list(L)
    bumped[p] += 1
    bumped.sort(reverse=True)
    assert load_from_pda(pda, bumped).messages >= load_from_pda(pda, L).messages


@pytest.mark.parametrize("q,m", [(2, 1), (2, 2), (3, 1), (3, 2), (2, 3)])
def test_ordered_never_above_unordered(q, m):
    rng = random.Random(q * 10 + m)
    K = q * (m + 1)
    for _ in range(200):
        L = random_sorted_profile(rng, K, max_users=5)
        lo = load_const_b_ordered(q, m, L).fraction
        hi = load_const_b_unordered(q, m, L).fraction
        assert lo <= hi
        assert (lo == hi) == (len(set(L[1:m + 2])) == 1)
    boundary = [9] + [4] * (m + 1) + [1] * (K - m - 2)
    assert load_const_b_ordered(q, m, boundary) == load_const_b_unordered(q, m, boundary)


def test_mn_permutation_invariance_all_orders():
    pda = construct_mn(5, 2)
    L = (6, 4, 4, 2, 1)
    base = load_from_pda(pda, L)
    for perm in permutations(range(5)):
        assert load_from_pda(pda.permute_columns(perm), L) == base
