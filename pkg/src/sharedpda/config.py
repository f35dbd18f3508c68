"""Global size budgets, overridable through the environment."""

import os

DEFAULT_CELL_BUDGET = 10**7
DEFAULT_PERMUTATION_BUDGET = 2 * 10**6

CELL_BUDGET_ENV = "SHAREDPDA_CELL_BUDGET"
PERMUTATION_BUDGET_ENV = "SHAREDPDA_PERMUTATION_BUDGET"


class BudgetExceeded(RuntimeError):
    pass


def _read(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None or raw == "":
        return default
    value = int(raw)
    if value < 1:
        raise ValueError(f"{name} must be positive, got {raw!r}")
    return value


def cell_budget() -> int:
    return _read(CELL_BUDGET_ENV, DEFAULT_CELL_BUDGET)


def permutation_budget() -> int:
    return _read(PERMUTATION_BUDGET_ENV, DEFAULT_PERMUTATION_BUDGET)
