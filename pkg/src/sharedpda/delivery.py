"""Byte-level simulation of placement, XOR multicast delivery and decoding."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import config
from .pda import GeneralizedPda, Pda
from .rate import LoadValue


class DecodeError(RuntimeError):
    pass


@dataclass(frozen=True)
class Library:
    """``content[n, j]`` is subfile j of file n, ``subfile_bytes`` long."""

    content: np.ndarray = field(repr=False)
    seed: int

    @property
    def num_files(self) -> int:
        return self.content.shape[0]

    @property
    def subfiles_per_file(self) -> int:
        return self.content.shape[1]

    @property
    def subfile_bytes(self) -> int:
        return self.content.shape[2]

    def subfile(self, n: int, j: int) -> np.ndarray:
        return self.content[n, j]

    def file(self, n: int) -> bytes:
        return self.content[n].tobytes()


@dataclass(frozen=True)
class Placement:
    """Star rows cached at each cache; every file contributes those rows."""

    star_rows: dict[int, tuple[int, ...]]
    subfiles_per_file: int

    def cache_contents(self, cache: int, library: Library) -> dict[tuple[int, int], np.ndarray]:
        return {(n, j): library.subfile(n, j)
                for n in range(library.num_files) for j in self.star_rows[cache]}

    def fraction(self, cache: int) -> float:
        return len(self.star_rows[cache]) / self.subfiles_per_file


@dataclass(frozen=True)
class Transmission:
    tag: tuple[int, int]
    terms: tuple[tuple[int, int, int], ...]  # (user, row, demanded file)
    payload: bytes = field(repr=False)


@dataclass(frozen=True)
class DeliveryRun:
    transmissions: tuple[Transmission, ...]
    demand: tuple[int, ...]
    measured_load: LoadValue
    decoded: dict[int, bool] = field(default_factory=dict)


def generate_library(num_files: int, subfiles_per_file: int, subfile_bytes: int, seed: int) -> Library:
    if min(num_files, subfiles_per_file, subfile_bytes) < 1:
        raise ValueError("library dimensions must be positive")
    total = num_files * subfiles_per_file * subfile_bytes
    if total > config.cell_budget():
        raise config.BudgetExceeded(f"library of {total} bytes exceeds the budget of {config.cell_budget()}")
    rng = np.random.default_rng(seed)
    content = rng.integers(0, 256, size=(num_files, subfiles_per_file, subfile_bytes), dtype=np.uint8)
    content.setflags(write=False)
    return Library(content, seed)


def place(array: Pda | GeneralizedPda, library: Library | None = None) -> Placement:
    """Cache each column's star rows.

    For a PDA the caches are its columns; for a GPDA they are the cache ids
    of ``user_to_cache`` (caches without users do not appear).
    """
    if library is not None and library.subfiles_per_file != array.rows:
        raise ValueError(f"library splits files into {library.subfiles_per_file} subfiles, array has {array.rows} rows")
    if isinstance(array, GeneralizedPda):
        rows: dict[int, tuple[int, ...]] = {}
        for k, cache in enumerate(array.user_to_cache):
            rows.setdefault(cache, array.star_rows(k))
    else:
        rows = {k: array.star_rows(k) for k in range(array.columns)}
    return Placement(rows, array.rows)


def _xor(blocks) -> np.ndarray:
    it = iter(blocks)
    acc = np.array(next(it), dtype=np.uint8, copy=True)
    for b in it:
        np.bitwise_xor(acc, b, out=acc)
    return acc


def deliver(gpda: GeneralizedPda, library: Library, demand: Sequence[int], check: bool = False) -> DeliveryRun:
    """One message per distinct (s, i), in lexicographic order of tags.

    Every tag is sent whatever the demand, so the message count is the
    worst case.  ``check`` re-derives each term from its payload and the
    other terms.
    """
    demand = tuple(int(d) for d in demand)
    if len(demand) != gpda.columns:
        raise ValueError(f"demand has {len(demand)} entries for {gpda.columns} users")
    if any(not 0 <= d < library.num_files for d in demand):
        raise ValueError(f"demand {demand} references a file outside [1, {library.num_files}]")
    if library.subfiles_per_file != gpda.rows:
        raise ValueError("library subpacketization does not match the array")

    out = []
    for tag, cells in gpda.cells_by_tag().items():
        terms = tuple((k, j, demand[k]) for j, k in sorted(cells, key=lambda c: (c[1], c[0])))
        blocks = [library.subfile(d, j) for _, j, d in terms]
        payload = _xor(blocks)
        if check:
            for n in range(len(blocks)):
                rest = _xor([payload] + blocks[:n] + blocks[n + 1:])
                assert np.array_equal(rest, blocks[n]), f"xor identity fails for tag {tag}"
        out.append(Transmission(tag, terms, payload.tobytes()))
    return DeliveryRun(tuple(out), demand, LoadValue(len(out), gpda.rows))


def decode(run: DeliveryRun, gpda: GeneralizedPda, placement: Placement,
           library: Library, user: int) -> bytes:
    """Recover the file demanded by ``user``.

    Only the user's cache (drawn from ``library`` through ``placement``), the
    payloads and the array are consulted.
    """
    cache = gpda.user_to_cache[user]
    stored = placement.cache_contents(cache, library)
    want = run.demand[user]
    by_tag = {tx.tag: tx for tx in run.transmissions}
    B = library.subfile_bytes
    parts = []
    for j in range(gpda.rows):
        cell = gpda.grid[j][user]
        if cell is None:
            parts.append(stored[(want, j)])
            continue
        tx = by_tag.get(cell)
        if tx is None:
            raise DecodeError(f"user {user + 1}: no transmission tagged {cell}")
        acc = np.frombuffer(tx.payload, dtype=np.uint8).copy()
        for k, jj, d in tx.terms:
            if k == user and jj == j:
                continue
            block = stored.get((d, jj))
            if block is None:
                raise DecodeError(f"user {user + 1}: subfile {jj + 1} of file {d + 1} is not cached")
            np.bitwise_xor(acc, block, out=acc)
        if acc.shape != (B,):
            raise DecodeError("payload length mismatch")
        parts.append(acc)
    return b"".join(np.asarray(p, dtype=np.uint8).tobytes() for p in parts)


def simulate(gpda: GeneralizedPda, library: Library, demand: Sequence[int],
             check: bool = False) -> DeliveryRun:
    """Deliver, then decode every user and compare against the library."""
    run = deliver(gpda, library, demand, check=check)
    placement = place(gpda, library)
    status = {}
    for k in range(gpda.columns):
        status[k] = decode(run, gpda, placement, library, k) == library.file(run.demand[k])
    return DeliveryRun(run.transmissions, run.demand, run.measured_load, status)
