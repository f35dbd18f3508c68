"""Expansion of a cache-level PDA into a user-level generalized PDA."""

from __future__ import annotations

from typing import Sequence

from .pda import GeneralizedPda, Pda, validate_gpda, validate_pda
from .profile import Profile


def build_gpda(pda: Pda, profile: Profile | Sequence[int]) -> GeneralizedPda:
    """One user column per user, cache by cache.

    User ``i`` (0-based) of cache ``c`` copies column ``c`` with every symbol
    ``s`` replaced by ``(s, i + 1)``.  Caches without users add no columns.
    The profile is matched to the columns positionally and need not be sorted.
    """
    loads = tuple(profile.loads if isinstance(profile, Profile) else profile)
    if len(loads) != pda.columns:
        raise ValueError(f"profile has {len(loads)} caches but the PDA has {pda.columns} columns")
    if any(x < 0 for x in loads):
        raise ValueError(f"profile has a negative load: {loads}")
    if sum(loads) < 1:
        raise ValueError("profile has no users")

    columns = []
    user_to_cache = []
    for cache, users in enumerate(loads):
        for i in range(users):
            columns.append([None if c is None else (c, i + 1) for c in pda.column(cache)])
            user_to_cache.append(cache)
    grid = [[col[j] for col in columns] for j in range(pda.rows)]
    return validate_gpda(grid, user_to_cache)


def reduce_to_pda(gpda: GeneralizedPda) -> Pda:
    """Collapse a GPDA whose entries all have replica 1 back to a PDA."""
    grid = []
    for j, row in enumerate(gpda.grid):
        line = []
        for k, c in enumerate(row):
            if c is not None and c[1] != 1:
                raise ValueError(f"cell ({j + 1},{k + 1}) has replica index {c[1]}; only 1 reduces")
            line.append(None if c is None else c[0])
        grid.append(line)
    return validate_pda(grid)
