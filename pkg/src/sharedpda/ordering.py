"""Column orderings of a PDA for a sorted association profile.

Three engines share one output type: a greedy intersection-number search,
the closed rule for Construction-B arrays, and an exhaustive search that
serves as the optimality oracle for the other two.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from . import config
from .constructions import const_b_params, parse_label
from .pda import Pda, symbol_stats
from .profile import Profile, as_sorted_loads, normalize_profile
from .rate import LoadValue, load_from_pda

__all__ = [
    "ColumnOrdering", "OrderingTrace", "Profile", "normalize_profile",
    "ordering_trace", "greedy_order", "const_b_order", "exhaustive_order",
    "identity_order", "alpha_star", "align_to_profile", "count_reduced_orderings",
]


@dataclass(frozen=True)
class OrderingTrace:
    prefix_symbol_sets: tuple[frozenset[int], ...]
    alpha: int
    intersection_numbers: tuple[int, ...]
    tie_log: tuple[tuple, ...] = ()
    regularity: int | None = None

    @property
    def columns(self) -> int:
        return len(self.prefix_symbol_sets)


@dataclass(frozen=True)
class ColumnOrdering:
    """``perm[p]`` is the source column placed at position ``p``."""

    perm: tuple[int, ...]
    pda: Pda
    trace: OrderingTrace

    def load(self, profile: Profile | Sequence[int]) -> LoadValue:
        return load_from_pda(self.pda, profile)


def ordering_trace(pda: Pda, perm: Sequence[int], tie_log=()) -> OrderingTrace:
    """Prefix symbol sets, alpha and per-position intersection numbers."""
    covered: frozenset[int] = frozenset()
    prefixes = []
    inter = []
    alpha = None
    for p, k in enumerate(perm):
        col = pda.column_symbols(k)
        inter.append(len(col & covered))
        covered = covered | col
        prefixes.append(covered)
        if alpha is None and len(covered) == pda.symbol_count:
            alpha = p + 1
    assert alpha is not None, "every symbol appears somewhere in a valid PDA"
    return OrderingTrace(tuple(prefixes), alpha, tuple(inter), tuple(tie_log),
                         symbol_stats(pda).regularity)


def _check_dims(pda: Pda, profile) -> tuple[int, ...]:
    loads = as_sorted_loads(profile)
    if len(loads) != pda.columns:
        raise ValueError(f"profile has {len(loads)} caches but the PDA has {pda.columns} columns")
    return loads


def _finish(pda: Pda, perm: list[int], tie_log=()) -> ColumnOrdering:
    return ColumnOrdering(tuple(perm), pda.permute_columns(perm), ordering_trace(pda, perm, tie_log))


def identity_order(pda: Pda) -> ColumnOrdering:
    return _finish(pda, list(range(pda.columns)))


def align_to_profile(pda: Pda, profile: Profile) -> Pda:
    """Rearrange columns so column p serves the cache at sorted position p.

    Column c of the input is assumed to serve physical cache c.
    """
    if len(profile) != pda.columns:
        raise ValueError(f"profile has {len(profile)} caches but the PDA has {pda.columns} columns")
    return pda.permute_columns(profile.relabeling)


def _best_next(symbols, covered, remaining):
    """Columns in ``remaining`` maximizing the overlap with ``covered``."""
    scores = {k: len(symbols[k] & covered) for k in remaining}
    top = max(scores.values())
    return top, [k for k in remaining if scores[k] == top]


def greedy_order(pda: Pda, profile: Profile | Sequence[int], lookahead: bool = False) -> ColumnOrdering:
    """Greedy ordering by intersection numbers.

    The first two positions take the column pair with the largest overlap;
    each later position takes the unused column overlapping most with the
    symbols seen so far.  Once every symbol has appeared the rest follow in
    source order.  Ties go to the smallest source index (smallest pair for
    the first step).  With ``lookahead`` each tied candidate is scored by
    the best overlap it would allow at the following step, and the highest
    score wins.
    """
    _check_dims(pda, profile)
    K, S = pda.columns, pda.symbol_count
    symbols = [pda.column_symbols(k) for k in range(K)]
    if K == 1:
        return identity_order(pda)

    tie_log: list[tuple] = []
    scores = {(a, b): len(symbols[a] & symbols[b]) for a, b in combinations(range(K), 2)}
    top = max(scores.values())
    pairs = [pr for pr in sorted(scores) if scores[pr] == top]
    if len(pairs) > 1:
        tie_log.append((2, tuple(pairs)))
    if lookahead and len(pairs) > 1:
        def pair_score(pr):
            rest = [k for k in range(K) if k not in pr]
            if not rest:
                return 0
            return _best_next(symbols, symbols[pr[0]] | symbols[pr[1]], rest)[0]
        best = max(pair_score(pr) for pr in pairs)
        pairs = [pr for pr in pairs if pair_score(pr) == best]
    perm = list(pairs[0])
    covered = symbols[perm[0]] | symbols[perm[1]]

    while len(covered) < S:
        remaining = [k for k in range(K) if k not in perm]
        _, tied = _best_next(symbols, covered, remaining)
        if len(tied) > 1:
            tie_log.append((len(perm) + 1, tuple(tied)))
            if lookahead:
                def step_score(k):
                    rest = [r for r in remaining if r != k]
                    return _best_next(symbols, covered | symbols[k], rest)[0] if rest else 0
                best = max(step_score(k) for k in tied)
                tied = [k for k in tied if step_score(k) == best]
        perm.append(tied[0])
        covered = covered | symbols[tied[0]]

    perm += [k for k in range(K) if k not in perm]
    return _finish(pda, perm, tie_log)


def const_b_order(pda: Pda, q: int, m: int, profile: Profile | Sequence[int]) -> ColumnOrdering:
    """Closed ordering rule for a Construction-B array.

    Positions 1..m take columns (0,0), (1,0), ..., (m-1,0).  Exactly one
    symbol is still missing after them; position m+1 takes the column of
    set u=m that lacks it.  The remaining columns follow in label order.
    """
    _check_dims(pda, profile)
    if const_b_params(pda) != (q, m):
        raise ValueError(f"PDA does not carry Construction-B labels for q={q}, m={m}")
    index = {parse_label(lab): k for k, lab in enumerate(pda.column_labels)}
    perm = [index[(u, 0)] for u in range(m)]
    covered = frozenset().union(*(pda.column_symbols(k) for k in perm))
    missing = set(range(pda.symbol_count)) - covered
    if len(missing) != 1:
        raise ValueError(f"expected one missing symbol after {m} columns, found {len(missing)}")
    (lost,) = missing
    lacking = [index[(m, v)] for v in range(q) if lost not in pda.column_symbols(index[(m, v)])]
    if len(lacking) != 1:
        raise ValueError("Construction-B labels are inconsistent with the array contents")
    perm.append(lacking[0])
    chosen = set(perm)
    perm += [index[lab] for lab in sorted(index) if index[lab] not in chosen]
    return _finish(pda, perm)


def _blocks(loads: Sequence[int]) -> list[int]:
    """Block id per position; positions with equal loads share a block."""
    ids, current = [], -1
    for p, x in enumerate(loads):
        if p == 0 or x != loads[p - 1]:
            current += 1
        ids.append(current)
    return ids


def count_reduced_orderings(loads: Sequence[int]) -> int:
    """Orderings left after merging those that differ only within equal-load blocks."""
    n = math.factorial(len(loads))
    for size in Counter(loads).values():
        n //= math.factorial(size)
    return n


def exhaustive_order(pda: Pda, profile: Profile | Sequence[int],
                     budget: int | None = None) -> tuple[ColumnOrdering, Fraction]:
    """Minimum-load ordering by depth-first search.

    Columns placed at positions of equal load are only taken in increasing
    source order, since swapping them cannot change the load.  A branch is
    cut when its partial load plus the smallest possible cost of the
    uncovered symbols cannot beat the best found.  Among optimal orderings
    the lexicographically smallest permutation is returned.
    """
    loads = _check_dims(pda, profile)
    budget = config.permutation_budget() if budget is None else budget
    n_orderings = count_reduced_orderings(loads)
    if n_orderings > budget:
        raise config.BudgetExceeded(
            f"{n_orderings} orderings after symmetry reduction exceed the budget of {budget}")

    K, S = pda.columns, pda.symbol_count
    symbols = [pda.column_symbols(k) for k in range(K)]
    block = _blocks(loads)
    last_load = loads[-1]
    best_cost = math.inf
    best_perm: list[int] | None = None
    perm: list[int] = []
    used = [False] * K

    def search(pos: int, covered: frozenset[int], cost: int) -> None:
        nonlocal best_cost, best_perm
        if cost + (S - len(covered)) * last_load >= best_cost:
            return
        if pos == K:
            best_cost, best_perm = cost, list(perm)
            return
        floor = perm[-1] if pos > 0 and block[pos] == block[pos - 1] else -1
        for k in range(floor + 1, K):
            if used[k]:
                continue
            new = symbols[k] - covered
            used[k] = True
            perm.append(k)
            search(pos + 1, covered | new, cost + len(new) * loads[pos])
            perm.pop()
            used[k] = False

    search(0, frozenset(), 0)
    assert best_perm is not None
    return _finish(pda, best_perm), Fraction(best_cost, pda.rows)


def alpha_star(trace: OrderingTrace) -> int:
    """First prefix length covering every symbol.

    For a g-regular array this can never exceed (number of columns) - g + 1.
    """
    if trace.regularity is not None:
        bound = trace.columns - trace.regularity + 1
        if trace.alpha > bound:
            raise AssertionError(f"alpha={trace.alpha} exceeds the regular-array bound {bound}")
    return trace.alpha
