"""Array file formats.

JSON: ``{"rows": F, "cols": K, "grid": [[...]]}`` with ``"*"`` for stars and
1-based symbols (PDA) or ``[s, i]`` pairs (GPDA); optional ``row_labels``,
``col_labels`` and, for GPDAs, a 1-based ``user_to_cache``.  PDAs may also
be plain text, one row per line, whitespace-separated ``*`` or integers.
"""

from __future__ import annotations

import json
from pathlib import Path

from .pda import GeneralizedPda, Pda, validate_gpda, validate_pda


def _cell_to_json(c):
    return "*" if c is None else c + 1


def _gcell_to_json(c):
    return "*" if c is None else [c[0] + 1, c[1]]


def pda_to_dict(pda: Pda) -> dict:
    out = {"rows": pda.rows, "cols": pda.columns,
           "grid": [[_cell_to_json(c) for c in row] for row in pda.grid]}
    if pda.row_labels is not None:
        out["row_labels"] = list(pda.row_labels)
    if pda.column_labels is not None:
        out["col_labels"] = list(pda.column_labels)
    return out


def gpda_to_dict(gpda: GeneralizedPda) -> dict:
    return {"rows": gpda.rows, "cols": gpda.columns,
            "grid": [[_gcell_to_json(c) for c in row] for row in gpda.grid],
            "user_to_cache": [c + 1 for c in gpda.user_to_cache]}


def _grid_and_dims(data: dict) -> list:
    if not isinstance(data, dict) or "grid" not in data:
        raise ValueError("array JSON must be an object with a 'grid' field")
    grid = data["grid"]
    if "rows" in data and data["rows"] != len(grid):
        raise ValueError(f"'rows' is {data['rows']} but the grid has {len(grid)} rows")
    if "cols" in data and grid and any(len(r) != data["cols"] for r in grid):
        raise ValueError(f"'cols' is {data['cols']} but a grid row has a different length")
    return grid


def _parse_symbol(c) -> int | None:
    if c == "*":
        return None
    if isinstance(c, bool) or not isinstance(c, int) or c < 1:
        raise ValueError(f"PDA entries must be '*' or positive integers, got {c!r}")
    return c - 1


def _parse_pair(c) -> tuple[int, int] | None:
    if c == "*":
        return None
    if (not isinstance(c, list) or len(c) != 2
            or not all(isinstance(x, int) and not isinstance(x, bool) and x >= 1 for x in c)):
        raise ValueError(f"GPDA entries must be '*' or [s, i] with positive integers, got {c!r}")
    return (c[0] - 1, c[1])


def pda_grid_from_dict(data: dict) -> list[list[int | None]]:
    return [[_parse_symbol(c) for c in row] for row in _grid_and_dims(data)]


def gpda_grid_from_dict(data: dict) -> tuple[list[list[tuple[int, int] | None]], list[int]]:
    grid = [[_parse_pair(c) for c in row] for row in _grid_and_dims(data)]
    if "user_to_cache" not in data:
        raise ValueError("GPDA JSON needs a 'user_to_cache' array")
    return grid, [int(c) - 1 for c in data["user_to_cache"]]


def pda_grid_from_text(text: str) -> list[list[int | None]]:
    grid = []
    for line in text.splitlines():
        tokens = line.split()
        if tokens:
            grid.append([None if tok == "*" else _parse_symbol(int(tok)) for tok in tokens])
    return grid


def pda_from_dict(data: dict) -> Pda:
    return validate_pda(pda_grid_from_dict(data), data.get("row_labels"), data.get("col_labels"))


def gpda_from_dict(data: dict) -> GeneralizedPda:
    return validate_gpda(*gpda_grid_from_dict(data))


def pda_from_text(text: str) -> Pda:
    return validate_pda(pda_grid_from_text(text))


def pda_to_text(pda: Pda) -> str:
    width = max(len(str(pda.symbol_count)), 1)
    return "\n".join(" ".join(str(_cell_to_json(c)).rjust(width) for c in row)
                     for row in pda.grid) + "\n"


def read_pda(path: str | Path) -> Pda:
    text = Path(path).read_text()
    if text.lstrip().startswith("{"):
        return pda_from_dict(json.loads(text))
    return pda_from_text(text)


def read_pda_grid(path: str | Path) -> list[list[int | None]]:
    """Parse a PDA file without validating it."""
    text = Path(path).read_text()
    if text.lstrip().startswith("{"):
        return pda_grid_from_dict(json.loads(text))
    return pda_grid_from_text(text)


def read_gpda(path: str | Path) -> GeneralizedPda:
    return gpda_from_dict(json.loads(Path(path).read_text()))


def dumps(data: dict) -> str:
    """JSON with one grid row per line."""
    body = {k: v for k, v in data.items() if k != "grid"}
    head = json.dumps({"rows": body.pop("rows"), "cols": body.pop("cols")})[:-1]
    rows = ",\n    ".join(json.dumps(r, separators=(", ", ": ")) for r in data["grid"])
    tail = "".join(f",\n  {json.dumps(k)}: {json.dumps(v)}" for k, v in body.items())
    return f"{head},\n  \"grid\": [\n    {rows}\n  ]{tail}\n}}\n"


def write_pda(pda: Pda, path: str | Path) -> None:
    Path(path).write_text(dumps(pda_to_dict(pda)))


def write_gpda(gpda: GeneralizedPda, path: str | Path) -> None:
    Path(path).write_text(dumps(gpda_to_dict(gpda)))
