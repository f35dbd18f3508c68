"""Generators for the MN PDA and the Construction-B family."""

from __future__ import annotations

import itertools
from math import comb

from . import config
from .pda import Pda, validate_pda


def _check_budget(rows: int, cols: int) -> None:
    cells = rows * cols
    if cells > config.cell_budget():
        raise config.BudgetExceeded(
            f"array would have {cells} cells, above the budget of {config.cell_budget()}")


def construct_mn(num_caches: int, t: int) -> Pda:
    """The (L, C(L,t), C(L-1,t-1), C(L,t+1)) PDA of the Maddah-Ali--Niesen scheme.

    Rows are the t-subsets of the caches in lexicographic order.  The cell at
    (T, k) is a star when k is in T and otherwise the lexicographic rank of
    the (t+1)-subset T + {k}.
    """
    if num_caches < 2 or not 1 <= t < num_caches:
        raise ValueError(f"need 1 <= t < num_caches, got num_caches={num_caches}, t={t}")
    _check_budget(comb(num_caches, t), num_caches)
    rows = list(itertools.combinations(range(num_caches), t))
    rank = {T: n for n, T in enumerate(itertools.combinations(range(num_caches), t + 1))}
    grid = []
    for T in rows:
        members = set(T)
        grid.append([None if k in members else rank[tuple(sorted(members | {k}))]
                     for k in range(num_caches)])
    row_labels = ["{" + ",".join(str(x + 1) for x in T) + "}" for T in rows]
    col_labels = [str(k + 1) for k in range(num_caches)]
    return validate_pda(grid, row_labels, col_labels)


def const_b_row_labels(q: int, m: int) -> list[tuple[int, ...]]:
    """Row labels (a, b_0, ..., b_{m-1}) in lexicographic order."""
    return [(a, *b) for a in range(q - 1) for b in itertools.product(range(q), repeat=m)]


def const_b_col_labels(q: int, m: int) -> list[tuple[int, int]]:
    return [(u, v) for u in range(m + 1) for v in range(q)]


def tuple_to_id(digits: tuple[int, ...] | list[int], q: int) -> int:
    """Base-q value of (t_0, ..., t_{m-1}) with t_{m-1} most significant."""
    return sum(d * q ** i for i, d in enumerate(digits))


def id_to_tuple(s: int, q: int, m: int) -> tuple[int, ...]:
    return tuple((s // q ** i) % q for i in range(m))


def format_label(label: tuple[int, ...]) -> str:
    return "(" + ",".join(map(str, label)) + ")"


def parse_label(text: str) -> tuple[int, ...]:
    body = text.strip()
    if not (body.startswith("(") and body.endswith(")")):
        raise ValueError(f"label {text!r} is not a parenthesized tuple")
    return tuple(int(x) for x in body[1:-1].split(","))


def construct_b(q: int, m: int) -> Pda:
    """Construction B: a (q(m+1), (q-1)q^m, (q-1)^2 q^(m-1), q^m) PDA.

    Symbols are m-tuples over Z_q, encoded by :func:`tuple_to_id`.  With the
    row label (a, b) read as t_i = b_{m-1-i}:

    * column (u, v), u < m, holds a symbol iff t_u == v; the symbol is t with
      coordinate u replaced by (v + a + 1) mod q;
    * column (m, v) holds the symbol t iff sum(t) == v - 1 - a (mod q).
    """
    if q < 2 or m < 1:
        raise ValueError(f"need q >= 2 and m >= 1, got q={q}, m={m}")
    _check_budget((q - 1) * q ** m, q * (m + 1))
    rows = const_b_row_labels(q, m)
    cols = const_b_col_labels(q, m)
    grid = []
    for a, *b in rows:
        t = [b[m - 1 - i] for i in range(m)]
        line = []
        for u, v in cols:
            if u < m:
                if t[u] == v:
                    sym = list(t)
                    sym[u] = (v + a + 1) % q
                    line.append(tuple_to_id(sym, q))
                else:
                    line.append(None)
            elif sum(t) % q == (v - 1 - a) % q:
                line.append(tuple_to_id(t, q))
            else:
                line.append(None)
        grid.append(line)
    return validate_pda(grid, [format_label(r) for r in rows], [format_label(c) for c in cols])


def const_b_params(pda: Pda) -> tuple[int, int] | None:
    """Recover (q, m) from Construction-B column labels, or None."""
    if pda.column_labels is None:
        return None
    try:
        labels = [parse_label(c) for c in pda.column_labels]
    except ValueError:
        return None
    if any(len(lab) != 2 for lab in labels):
        return None
    m = max(u for u, _ in labels)
    q = max(v for _, v in labels) + 1
    if m < 1 or q < 2 or sorted(labels) != const_b_col_labels(q, m):
        return None
    if pda.params != (q * (m + 1), (q - 1) * q ** m, (q - 1) ** 2 * q ** (m - 1), q ** m):
        return None
    return q, m
