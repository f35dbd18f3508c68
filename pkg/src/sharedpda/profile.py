"""User-to-cache association profiles."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence


@dataclass(frozen=True)
class Profile:
    """Users per cache, sorted non-increasing.

    ``relabeling[p]`` is the original (physical) id of the cache at sorted
    position ``p``; ``raw`` keeps the loads in their original order.
    """

    loads: tuple[int, ...]
    relabeling: tuple[int, ...]
    raw: tuple[int, ...]

    @property
    def sorted(self) -> bool:
        return all(a >= b for a, b in zip(self.loads, self.loads[1:]))

    @property
    def num_caches(self) -> int:
        return len(self.loads)

    @property
    def total_users(self) -> int:
        return sum(self.loads)

    def __len__(self) -> int:
        return len(self.loads)

    def __getitem__(self, p: int) -> int:
        return self.loads[p]

    def __iter__(self):
        return iter(self.loads)


def normalize_profile(raw: Sequence[int]) -> Profile:
    """Sort loads non-increasing, stably, recording where each came from."""
    raw = tuple(int(x) for x in raw)
    if not raw:
        raise ValueError("profile is empty")
    if any(x < 0 for x in raw):
        raise ValueError(f"profile has a negative load: {raw}")
    if not any(raw):
        raise ValueError("profile has no users")
    order = sorted(range(len(raw)), key=lambda c: -raw[c])
    return Profile(tuple(raw[c] for c in order), tuple(order), raw)


def as_sorted_loads(profile: Profile | Sequence[int]) -> tuple[int, ...]:
    """Loads of an already-sorted profile; refuses to re-sort silently."""
    loads = tuple(profile.loads if isinstance(profile, Profile) else profile)
    if any(x < 0 for x in loads):
        raise ValueError(f"profile has a negative load: {loads}")
    if any(a < b for a, b in zip(loads, loads[1:])):
        raise ValueError(f"profile {loads} is not sorted non-increasing; normalize it first")
    return loads


def parse_profile(text: str) -> Profile:
    """Parse ``"5,4,3,2,2,1"`` into a normalized profile."""
    tokens = [tok.strip() for tok in text.replace(" ", ",").split(",") if tok.strip()]
    if not tokens:
        raise ValueError("profile is empty")
    try:
        values = [int(tok) for tok in tokens]
    except ValueError:
        raise ValueError(f"malformed profile {text!r}: expected comma-separated integers") from None
    return normalize_profile(values)
