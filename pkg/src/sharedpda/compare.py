"""Side-by-side delivery loads of the available ordering strategies."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import config
from .constructions import const_b_params
from .ordering import (ColumnOrdering, align_to_profile, const_b_order, exhaustive_order,
                       greedy_order, identity_order)
from .pda import Pda
from .profile import Profile
from .rate import LoadValue, load_const_b_ordered, load_const_b_unordered, load_mn_baseline


@dataclass(frozen=True)
class StrategyRow:
    strategy: str
    ordering: tuple[int, ...] | None  # source columns, 0-based, by sorted position
    alpha: int | None
    load: LoadValue
    note: str = ""

    @property
    def subpacketization(self) -> int:
        return self.load.subpacketization

    def to_dict(self) -> dict:
        return {
            "strategy": self.strategy,
            "ordering": None if self.ordering is None else [k + 1 for k in self.ordering],
            "alpha": self.alpha,
            "load": {"numerator": self.load.messages, "denominator": self.load.subpacketization,
                     "reduced": str(self.load.fraction), "decimal": self.load.decimal()},
            "subpacketization": self.subpacketization,
            "note": self.note,
        }


@dataclass(frozen=True)
class ComparisonReport:
    profile: Profile
    params: tuple[int, int, int, int]
    rows: tuple[StrategyRow, ...]
    skipped: dict[str, str] = field(default_factory=dict)

    def row(self, strategy: str) -> StrategyRow:
        for r in self.rows:
            if r.strategy == strategy:
                return r
        raise KeyError(strategy)

    def to_dict(self) -> dict:
        K, F, Z, S = self.params
        return {
            "pda": {"K": K, "F": F, "Z": Z, "S": S},
            "profile": profile_dict(self.profile),
            "strategies": [r.to_dict() for r in self.rows],
            "skipped": dict(self.skipped),
        }

    def render(self) -> str:
        K, F, Z, S = self.params
        lines = [f"PDA (K,F,Z,S) = ({K},{F},{Z},{S})",
                 f"profile raw={list(self.profile.raw)} sorted={list(self.profile.loads)} "
                 f"caches by sorted position={[c + 1 for c in self.profile.relabeling]}",
                 ""]
        header = f"{'strategy':<14} {'load':>12} {'decimal':>10} {'F':>6} {'alpha':>6}  ordering"
        lines += [header, "-" * len(header)]
        for r in self.rows:
            order = "" if r.ordering is None else ",".join(str(k + 1) for k in r.ordering)
            alpha = "" if r.alpha is None else str(r.alpha)
            lines.append(f"{r.strategy:<14} {str(r.load):>12} {r.load.decimal():>10} "
                         f"{r.subpacketization:>6} {alpha:>6}  {order}"
                         + (f"  [{r.note}]" if r.note else ""))
        for name, why in self.skipped.items():
            lines.append(f"{name:<14} skipped: {why}")
        return "\n".join(lines) + "\n"


def profile_dict(profile: Profile) -> dict:
    return {"raw": list(profile.raw), "sorted": list(profile.loads),
            "relabeling": [c + 1 for c in profile.relabeling]}


def _row(name: str, ordering: ColumnOrdering, profile: Profile, source=None, note="") -> StrategyRow:
    perm = ordering.perm if source is None else tuple(source[k] for k in ordering.perm)
    return StrategyRow(name, perm, ordering.trace.alpha, ordering.load(profile), note)


def run_compare(pda: Pda, profile: Profile, lookahead: bool = False,
                budget: int | None = None) -> ComparisonReport:
    """Loads for the identity, greedy, exhaustive, Construction-B and MN strategies.

    Column c of ``pda`` is taken to serve physical cache c in the identity
    row.  Exhaustive search is skipped when over budget; the Construction-B
    rows need its labels, and the MN baseline needs t = K*Z/F to be an
    integer in [1, K).
    """
    rows = []
    skipped = {}
    ident = align_to_profile(pda, profile)
    rows.append(_row("identity", identity_order(ident), profile, source=profile.relabeling))
    rows.append(_row("greedy", greedy_order(pda, profile, lookahead=lookahead), profile,
                     note="lookahead" if lookahead else ""))
    try:
        best, _ = exhaustive_order(pda, profile, budget)
        rows.append(_row("exhaustive", best, profile))
    except config.BudgetExceeded as exc:
        skipped["exhaustive"] = str(exc)

    qm = const_b_params(pda)
    if qm is None:
        skipped["const-b"] = "no Construction-B column labels"
    else:
        q, m = qm
        rows.append(_row("const-b", const_b_order(pda, q, m, profile), profile))
        rows.append(StrategyRow("const-b-closed", None, m + 2, load_const_b_ordered(q, m, profile),
                                "closed form, ordered"))
        rows.append(StrategyRow("const-b-plain", None, None, load_const_b_unordered(q, m, profile),
                                "closed form, unordered"))

    K = pda.columns
    t = Fraction(K * pda.z_per_column, pda.rows)
    if t.denominator == 1 and 1 <= t < K:
        t = int(t)
        try:
            rows.append(StrategyRow("mn-baseline", None, None, load_mn_baseline(K, t, profile),
                                    f"own subpacketization, t={t}"))
        except config.BudgetExceeded as exc:
            skipped["mn-baseline"] = str(exc)
    else:
        skipped["mn-baseline"] = f"t = K*Z/F = {t} is not an integer in [1, {K})"
    return ComparisonReport(profile, pda.params, tuple(rows), skipped)
