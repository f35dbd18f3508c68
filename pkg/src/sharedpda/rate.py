"""Exact delivery loads.

A load is a count of multicast messages over the subpacketization level F.
It is kept as an unreduced integer pair so the message count stays visible;
decimals are produced only for display.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Sequence

from .constructions import construct_mn
from .pda import GeneralizedPda, Pda
from .profile import Profile, as_sorted_loads


@dataclass(frozen=True)
class LoadValue:
    messages: int
    subpacketization: int

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.messages, self.subpacketization)

    def decimal(self, places: int = 3) -> str:
        return format_decimal(self.fraction, places)

    def __str__(self) -> str:
        return f"{self.messages}/{self.subpacketization}"


def format_decimal(value: Fraction, places: int = 3) -> str:
    """Round half to even at ``places`` digits, exactly."""
    scaled = value * 10**places
    q, r = divmod(scaled.numerator, scaled.denominator)
    twice = 2 * r
    if twice > scaled.denominator or (twice == scaled.denominator and q % 2 == 1):
        q += 1
    sign = "-" if q < 0 else ""
    q = abs(q)
    whole, frac = divmod(q, 10**places)
    return f"{sign}{whole}.{frac:0{places}d}" if places else f"{sign}{whole}"


def tau_values(pda: Pda) -> dict[int, int]:
    """Map each symbol to the 1-based position of the first column holding it."""
    tau: dict[int, int] = {}
    for k in range(pda.columns):
        for s in pda.column_symbols(k):
            tau.setdefault(s, k + 1)
    return dict(sorted(tau.items()))


def _loads_for(pda_columns: int, profile: Profile | Sequence[int]) -> tuple[int, ...]:
    loads = as_sorted_loads(profile)
    if len(loads) != pda_columns:
        raise ValueError(f"profile has {len(loads)} caches but the PDA has {pda_columns} columns")
    return loads


def load_from_pda(pda: Pda, profile: Profile | Sequence[int]) -> LoadValue:
    """Sum of L[tau_s] over all symbols, over F.

    Columns are taken in their current order and matched position by
    position with the sorted profile.
    """
    loads = _loads_for(pda.columns, profile)
    tau = tau_values(pda)
    return LoadValue(sum(loads[p - 1] for p in tau.values()), pda.rows)


def load_from_gpda(gpda: GeneralizedPda) -> LoadValue:
    top: dict[int, int] = {}
    for row in gpda.grid:
        for c in row:
            if c is not None:
                s, i = c
                top[s] = max(top.get(s, 0), i)
    return LoadValue(sum(top.values()), gpda.rows)


def _const_b_loads(q: int, m: int, profile) -> tuple[int, ...]:
    if q < 2 or m < 1:
        raise ValueError(f"need q >= 2 and m >= 1, got q={q}, m={m}")
    return _loads_for(q * (m + 1), profile)


def load_const_b_ordered(q: int, m: int, profile: Profile | Sequence[int]) -> LoadValue:
    """L1/q + L2/q^2 + ... + Lm/q^m + L(m+2)/((q-1)q^m), over F = (q-1)q^m."""
    L = _const_b_loads(q, m, profile)
    F = (q - 1) * q**m
    messages = sum(L[i - 1] * (q - 1) * q ** (m - i) for i in range(1, m + 1)) + L[m + 1]
    return LoadValue(messages, F)


def load_const_b_unordered(q: int, m: int, profile: Profile | Sequence[int]) -> LoadValue:
    """L1/q + L2/(q(q-1)), over F = (q-1)q^m."""
    L = _const_b_loads(q, m, profile)
    F = (q - 1) * q**m
    return LoadValue(L[0] * (q - 1) * q ** (m - 1) + L[1] * q ** (m - 1), F)


def load_mn_baseline(num_caches: int, t: int, profile: Profile | Sequence[int]) -> LoadValue:
    """Load of the MN PDA for the profile, evaluated on the array itself."""
    return load_from_pda(construct_mn(num_caches, t), _loads_for(num_caches, profile))


def load_mn_subsets(num_caches: int, t: int, profile: Profile | Sequence[int]) -> LoadValue:
    """Independent route: sum of L[min T] over (t+1)-subsets T, over C(L, t)."""
    if not 1 <= t < num_caches:
        raise ValueError(f"need 1 <= t < num_caches, got t={t}")
    L = _loads_for(num_caches, profile)
    messages = sum(L[T[0]] for T in combinations(range(num_caches), t + 1))
    return LoadValue(messages, comb(num_caches, t))
