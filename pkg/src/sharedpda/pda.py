"""Placement delivery arrays and their generalized (shared-cache) form.

Cells are stored 0-based: ``None`` is a star, an ``int`` is a symbol id in
``[0, S)``, and a ``(s, i)`` tuple is a generalized entry with a 0-based
symbol ``s`` and a 1-based replica index ``i``.  File formats and printed
output use 1-based symbols.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

STAR = None

Cell = int | None
GCell = tuple[int, int] | None


@dataclass(frozen=True)
class Violation:
    condition: str  # C1, C2, C3a, C3b, C4 or CACHE
    rows: tuple[int, ...]
    cols: tuple[int, ...]
    message: str

    def __str__(self) -> str:
        rows = ",".join(str(r + 1) for r in self.rows)
        cols = ",".join(str(c + 1) for c in self.cols)
        return f"{self.condition} rows={{{rows}}} cols={{{cols}}}: {self.message}"


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = ()
    warnings: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def conditions(self) -> set[str]:
        return {v.condition for v in self.violations}

    def __str__(self) -> str:
        lines = [str(v) for v in self.violations]
        lines += [f"warning: {w}" for w in self.warnings]
        return "\n".join(lines) if lines else "ok"


class InvalidArrayError(ValueError):
    """Raised when a grid violates one of the defining conditions."""

    def __init__(self, report: ValidationReport):
        self.report = report
        super().__init__(f"invalid array:\n{report}")


@dataclass(frozen=True)
class Pda:
    """A validated (K, F, Z, S) placement delivery array.

    Build instances through :func:`validate_pda`; the constructor does not
    re-check the defining conditions.
    """

    grid: tuple[tuple[Cell, ...], ...]
    z_per_column: int
    symbol_count: int
    row_labels: tuple[str, ...] | None = None
    column_labels: tuple[str, ...] | None = None

    @property
    def rows(self) -> int:
        return len(self.grid)

    @property
    def columns(self) -> int:
        return len(self.grid[0])

    @property
    def params(self) -> tuple[int, int, int, int]:
        """(K, F, Z, S)."""
        return (self.columns, self.rows, self.z_per_column, self.symbol_count)

    @property
    def memory_ratio(self) -> Fraction:
        return Fraction(self.z_per_column, self.rows)

    def column(self, k: int) -> tuple[Cell, ...]:
        return tuple(row[k] for row in self.grid)

    def column_symbols(self, k: int) -> frozenset[int]:
        return frozenset(row[k] for row in self.grid if row[k] is not None)

    def star_rows(self, k: int) -> tuple[int, ...]:
        return tuple(j for j, row in enumerate(self.grid) if row[k] is None)

    def permute_columns(self, perm: Sequence[int]) -> Pda:
        """Column ``p`` of the result is column ``perm[p]`` of ``self``."""
        if sorted(perm) != list(range(self.columns)):
            raise ValueError(f"not a permutation of the {self.columns} columns: {perm}")
        grid = tuple(tuple(row[k] for k in perm) for row in self.grid)
        labels = None
        if self.column_labels is not None:
            labels = tuple(self.column_labels[k] for k in perm)
        return Pda(grid, self.z_per_column, self.symbol_count, self.row_labels, labels)


@dataclass(frozen=True)
class GeneralizedPda:
    grid: tuple[tuple[GCell, ...], ...]
    z_per_column: int
    symbol_count: int
    max_replica: int
    user_to_cache: tuple[int, ...]
    warnings: tuple[str, ...] = field(default=(), compare=False)

    @property
    def rows(self) -> int:
        return len(self.grid)

    @property
    def columns(self) -> int:
        return len(self.grid[0]) if self.grid else 0

    def column(self, k: int) -> tuple[GCell, ...]:
        return tuple(row[k] for row in self.grid)

    def star_rows(self, k: int) -> tuple[int, ...]:
        return tuple(j for j, row in enumerate(self.grid) if row[k] is None)

    def tags(self) -> list[tuple[int, int]]:
        """Distinct (s, i) entries in lexicographic order."""
        return sorted({c for row in self.grid for c in row if c is not None})

    def cells_by_tag(self) -> dict[tuple[int, int], list[tuple[int, int]]]:
        """Map each (s, i) to its (row, user) cells, row-major."""
        cells: dict[tuple[int, int], list[tuple[int, int]]] = defaultdict(list)
        for j, row in enumerate(self.grid):
            for k, c in enumerate(row):
                if c is not None:
                    cells[c].append((j, k))
        return dict(sorted(cells.items()))


@dataclass(frozen=True)
class SymbolStats:
    occurrences: dict[int, int]
    columns_of: dict[int, tuple[int, ...]]

    @property
    def regularity(self) -> int | None:
        """The common occurrence count g if the array is g-regular."""
        counts = set(self.occurrences.values())
        return counts.pop() if len(counts) == 1 else None


def _check_shape(grid: Sequence[Sequence[object]]) -> tuple[int, int]:
    if len(grid) == 0 or len(grid[0]) == 0:
        raise ValueError("grid is empty")
    width = len(grid[0])
    for j, row in enumerate(grid):
        if len(row) != width:
            raise ValueError(f"grid is not rectangular: row {j + 1} has {len(row)} cells, expected {width}")
    return len(grid), width


def _star_violations(grid, F: int, K: int) -> tuple[int, list[Violation]]:
    counts = [sum(1 for j in range(F) if grid[j][k] is None) for k in range(K)]
    Z = counts[0]
    out = []
    if Z == 0:
        out.append(Violation("C1", (), (0,), "column has no star; Z must be positive"))
    for k in range(1, K):
        if counts[k] != Z:
            out.append(Violation("C1", (), (k,), f"column has {counts[k]} stars, expected Z={Z}"))
    return Z, out


def _pair_violations(grid, entries: Mapping[object, list[tuple[int, int]]], show) -> list[Violation]:
    out = []
    for value, cells in entries.items():
        for a in range(len(cells)):
            j1, k1 = cells[a]
            for b in range(a + 1, len(cells)):
                j2, k2 = cells[b]
                if j1 == j2 or k1 == k2:
                    where = "row" if j1 == j2 else "column"
                    out.append(Violation("C3a", tuple(sorted({j1, j2})), tuple(sorted({k1, k2})),
                                         f"{show(value)} repeated in one {where}"))
                elif grid[j1][k2] is not None or grid[j2][k1] is not None:
                    out.append(Violation("C3b", tuple(sorted((j1, j2))), tuple(sorted((k1, k2))),
                                         f"{show(value)} pair lacks stars at the cross cells"))
    return out


def check_pda(grid: Sequence[Sequence[Cell]]) -> ValidationReport:
    """Collect every violation of the PDA conditions in ``grid``.

    Z is read off the first column; S is one more than the largest symbol id.
    """
    F, K = _check_shape(grid)
    violations: list[Violation] = []
    for j, row in enumerate(grid):
        for k, c in enumerate(row):
            if c is not None and (not isinstance(c, int) or isinstance(c, bool) or c < 0):
                raise ValueError(f"cell ({j + 1},{k + 1}) is not a star or a symbol id: {c!r}")
    _, c1 = _star_violations(grid, F, K)
    violations += c1

    entries: dict[int, list[tuple[int, int]]] = defaultdict(list)
    for j in range(F):
        for k in range(K):
            if grid[j][k] is not None:
                entries[grid[j][k]].append((j, k))
    if not entries:
        violations.append(Violation("C2", (), (), "no symbol present"))
    else:
        missing = sorted(set(range(max(entries) + 1)) - set(entries))
        if missing:
            gaps = ", ".join(str(s + 1) for s in missing)
            violations.append(Violation("C2", (), (), f"symbol ids not contiguous; missing {gaps}"))
    violations += _pair_violations(grid, entries, lambda s: f"symbol {s + 1}")
    return ValidationReport(tuple(violations))


def validate_pda(grid: Sequence[Sequence[Cell]], row_labels=None, column_labels=None) -> Pda:
    report = check_pda(grid)
    if not report.ok:
        raise InvalidArrayError(report)
    F, K = len(grid), len(grid[0])
    if row_labels is not None and len(row_labels) != F:
        raise ValueError(f"{len(row_labels)} row labels for {F} rows")
    if column_labels is not None and len(column_labels) != K:
        raise ValueError(f"{len(column_labels)} column labels for {K} columns")
    frozen = tuple(tuple(row) for row in grid)
    Z = sum(1 for row in frozen if row[0] is None)
    S = 1 + max(c for row in frozen for c in row if c is not None)
    return Pda(frozen, Z, S,
               tuple(row_labels) if row_labels is not None else None,
               tuple(column_labels) if column_labels is not None else None)


def check_gpda(grid: Sequence[Sequence[GCell]], user_to_cache: Sequence[int]) -> ValidationReport:
    """Collect violations of the generalized conditions C1-C4.

    Also checks that users sharing a cache have identical star rows.  Missing
    (s, i) pairs below the largest replica of ``s`` and symbol ids absent
    from the grid are warnings, since profiles with zero-user caches
    legitimately drop them.
    """
    F, K = _check_shape(grid)
    if len(user_to_cache) != K:
        raise ValueError(f"user_to_cache has {len(user_to_cache)} entries for {K} user columns")
    entries: dict[tuple[int, int], list[tuple[int, int]]] = defaultdict(list)
    for j, row in enumerate(grid):
        for k, c in enumerate(row):
            if c is None:
                continue
            if (not isinstance(c, tuple) or len(c) != 2 or c[0] < 0 or c[1] < 1):
                raise ValueError(f"cell ({j + 1},{k + 1}) is not a star or an (s, i) pair: {c!r}")
            entries[c].append((j, k))

    violations: list[Violation] = []
    warnings: list[str] = []
    _, c1 = _star_violations(grid, F, K)
    violations += c1

    if not entries:
        violations.append(Violation("C2", (), (), "no (s, i) entry present"))
    else:
        symbols = {s for s, _ in entries}
        replicas = {i for _, i in entries}
        missing_i = sorted(set(range(1, max(replicas) + 1)) - replicas)
        if missing_i:
            violations.append(Violation("C2", (), (), "replica indices never used: "
                                        + ", ".join(map(str, missing_i))))
        missing_s = sorted(set(range(max(symbols) + 1)) - symbols)
        if missing_s:
            warnings.append("symbols absent: " + ", ".join(str(s + 1) for s in missing_s))
        top: dict[int, int] = defaultdict(int)
        for s, i in entries:
            top[s] = max(top[s], i)
        for s in sorted(top):
            gaps = [i for i in range(1, top[s]) if (s, i) not in entries]
            if gaps:
                warnings.append(f"symbol {s + 1} skips replicas " + ", ".join(map(str, gaps)))

    violations += _pair_violations(grid, entries, lambda t: f"({t[0] + 1},{t[1]})")

    # C4: same symbol in one row, star below the first, so star below the second
    by_row_symbol: dict[tuple[int, int], list[int]] = defaultdict(list)
    for (s, _), cells in entries.items():
        for j, k in cells:
            by_row_symbol[(j, s)].append(k)
    for (j1, s), cols in sorted(by_row_symbol.items()):
        for k1 in cols:
            for k2 in cols:
                if k1 == k2:
                    continue
                for j2 in range(F):
                    if j2 != j1 and grid[j2][k1] is None and grid[j2][k2] is not None:
                        violations.append(Violation(
                            "C4", (j1, j2), (k1, k2),
                            f"symbol {s + 1} shared in a row but side information differs"))

    stars_of: dict[int, tuple[int, ...]] = {}
    for k in range(K):
        stars = tuple(j for j in range(F) if grid[j][k] is None)
        cache = user_to_cache[k]
        if cache in stars_of and stars_of[cache] != stars:
            violations.append(Violation("CACHE", (), (k,),
                                        f"star rows differ from other users of cache {cache + 1}"))
        stars_of.setdefault(cache, stars)
    return ValidationReport(tuple(violations), tuple(warnings))


def validate_gpda(grid: Sequence[Sequence[GCell]], user_to_cache: Sequence[int]) -> GeneralizedPda:
    report = check_gpda(grid, user_to_cache)
    if not report.ok:
        raise InvalidArrayError(report)
    frozen = tuple(tuple(row) for row in grid)
    pairs = [c for row in frozen for c in row if c is not None]
    return GeneralizedPda(
        grid=frozen,
        z_per_column=sum(1 for row in frozen if row[0] is None),
        symbol_count=1 + max(s for s, _ in pairs),
        max_replica=max(i for _, i in pairs),
        user_to_cache=tuple(user_to_cache),
        warnings=report.warnings,
    )


def symbol_stats(pda: Pda) -> SymbolStats:
    occurrences: dict[int, int] = {s: 0 for s in range(pda.symbol_count)}
    cols: dict[int, set[int]] = {s: set() for s in range(pda.symbol_count)}
    for row in pda.grid:
        for k, c in enumerate(row):
            if c is not None:
                occurrences[c] += 1
                cols[c].add(k)
    return SymbolStats(occurrences, {s: tuple(sorted(v)) for s, v in cols.items()})


def from_display(rows: Iterable[Iterable[object]]) -> list[list[Cell]]:
    """Convert 1-based display rows (``"*"`` or positive ints) to cells."""
    out = []
    for row in rows:
        out.append([None if c in ("*", None) else int(c) - 1 for c in row])
    return out
