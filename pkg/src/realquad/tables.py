"""Batch tables of locally associated orders, statistics and unit cache files."""

from __future__ import annotations

import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import IO, Iterable, Iterator

from .arith import is_prime, primes_up_to
from .classify import classify_general, compact_rules
from .errors import CacheFormatError, DomainError
from .laorder import minimal_unit_power
from .quadfield import QuadInt, make_field, norm, unit_cache

CSV_HEADER = "d,n,locally_associated,m,L,rules"


@dataclass(frozen=True)
class TableRow:
    d: int
    n: int
    verdict: bool
    m: int
    l_value: int
    rules: str

    def csv(self) -> str:
        return f"{self.d},{self.n},{int(self.verdict)},{self.m},{self.l_value},{self.rules}"

    def to_json(self) -> str:
        return json.dumps(asdict(self))


def table_row(d: int, n: int) -> TableRow:
    c = classify_general(n, d)
    mp = minimal_unit_power(n, d)
    if c.verdict != mp.locally_associated:
        raise RuntimeError(f"classifier and direct computation disagree on ({n}, {d})")
    return TableRow(d, n, c.verdict, mp.m, mp.l_value, compact_rules(c))


def _rows_for_d(args: tuple[int, int]) -> list[TableRow]:
    d, n_max = args
    return [table_row(d, n) for n in range(1, n_max + 1)]


def generate_table(
    d_values: Iterable[int], n_max: int, workers: int = 1
) -> Iterator[TableRow]:
    """Rows for every (d, n), d ascending then n ascending.

    All d are validated before the first row is produced.
    """
    if n_max < 1:
        raise DomainError("n_max must be >= 1")
    ds = sorted(set(d_values))
    for d in ds:
        make_field(d)
    jobs = [(d, n_max) for d in ds]
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            for rows in pool.map(_rows_for_d, jobs):
                yield from rows
    else:
        for job in jobs:
            yield from _rows_for_d(job)


def squarefree_range(d_min: int, d_max: int, primes_only: bool = False) -> list[int]:
    out = []
    for d in range(max(d_min, 2), d_max + 1):
        if primes_only:
            if is_prime(d):
                out.append(d)
            continue
        try:
            make_field(d)
        except DomainError:
            continue
        out.append(d)
    return out


def write_csv(rows: Iterable[TableRow], fh: IO[str]) -> int:
    fh.write(CSV_HEADER + "\n")
    count = 0
    for row in rows:
        fh.write(row.csv() + "\n")
        count += 1
    return count


def write_jsonl(rows: Iterable[TableRow], fh: IO[str]) -> int:
    count = 0
    for row in rows:
        fh.write(row.to_json() + "\n")
        count += 1
    return count


@dataclass
class UndeterminedStats:
    case_id: int
    occurrences: int = 0
    locally_associated: int = 0
    parameters: dict = field(default_factory=dict)


def _case_orders(case_id: int, p_max: int, n_max: int | None) -> Iterator[tuple[int, int]]:
    """(p, n) pairs the classifier leaves to a direct computation, per case."""
    primes = primes_up_to(p_max)
    if case_id == 1:
        for p in primes:
            if p % 8 == 5:
                yield p, 2
        return
    if n_max is None:
        raise DomainError(f"case {case_id} needs an explicit n_max")
    for p in primes:
        if p % 4 == 3:
            continue
        for q in primes_up_to(n_max):
            if q % 4 != 3:
                continue
            if case_id == 2 and q > 3:
                yield p, q
            elif case_id == 3 and q * q <= n_max:
                if minimal_unit_power(q, p).locally_associated:
                    yield p, q * q


def undetermined_stats(
    p_max: int, cases: Iterable[int] = (1, 2, 3), n_max: int | None = None
) -> list[UndeterminedStats]:
    """Occurrence and locally-associated counts for the unresolved families.

    case 1: p = 5 (mod 8), n = 2.
    case 2: p != 3 (mod 4), n = q prime, q = 3 (mod 4), 3 < q <= n_max.
    case 3: p != 3 (mod 4), n = q^2 <= n_max, q = 3 (mod 4), R_q locally associated.
    """
    if p_max < 2:
        raise DomainError("p_max must be >= 2")
    out = []
    for case_id in cases:
        if case_id not in (1, 2, 3):
            raise DomainError(f"unknown case {case_id}")
        params = {"p_max": p_max} if case_id == 1 else {"p_max": p_max, "n_max": n_max}
        stats = UndeterminedStats(case_id, parameters=params)
        for p, n in _case_orders(case_id, p_max, n_max):
            stats.occurrences += 1
            stats.locally_associated += minimal_unit_power(n, p).locally_associated
        out.append(stats)
    return out


def save_unit_cache(path: str | os.PathLike) -> int:
    """Write every cached unit as one JSON object per line; returns the count."""
    path = Path(path)
    tmp = path.with_name(path.name + ".tmp")
    items = unit_cache.items()
    with open(tmp, "w") as fh:
        for d, u in items:
            rec = {"d": str(d), "x": str(u.x), "y": str(u.y), "norm": str(norm(u))}
            fh.write(json.dumps(rec) + "\n")
    os.replace(tmp, path)
    return len(items)


def _parse_unit(line: str, lineno: int) -> QuadInt:
    d = None
    try:
        rec = json.loads(line)
        d = int(rec["d"])
        x, y, stated = int(rec["x"]), int(rec["y"]), int(rec["norm"])
    except (ValueError, KeyError, TypeError) as exc:
        raise CacheFormatError(f"line {lineno}: unreadable unit record ({exc})", d) from exc
    try:
        f = make_field(d)
    except DomainError as exc:
        raise CacheFormatError(f"line {lineno}: {exc}", d) from exc
    u = QuadInt(f, x, y)
    actual = norm(u)
    if abs(actual) != 1 or actual != stated:
        raise CacheFormatError(
            f"line {lineno}: unit for d={d} has norm {actual}, file says {stated}", d
        )
    a, b, _ = u.sqrt_coords()
    if a <= 0 or b <= 0:
        raise CacheFormatError(f"line {lineno}: unit for d={d} is not > 1", d)
    return u


def load_unit_cache(path: str | os.PathLike, install: bool = True) -> dict[int, QuadInt]:
    """Read and validate a unit cache file; the whole file is rejected on any error."""
    units: dict[int, QuadInt] = {}
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip():
                continue
            u = _parse_unit(line, lineno)
            units[u.field.d] = u
    if install:
        for u in units.values():
            unit_cache.put(u)
    return units
