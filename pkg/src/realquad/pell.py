"""Minimal Pell solutions and the R_p scanner.

For an odd prime p, R_p in Q[sqrt p] is locally associated iff x^2 - p*y^2 = 1
has a solution with p not dividing y. Every solution is a power of the minimal
one, and if p | y_1 then y_{k+1} = x_1*y_k + y_1*x_k keeps p | y_k, so the
minimal solution decides the question.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator

from .arith import is_prime, primes_up_to
from .errors import DomainError
from .laorder import is_locally_associated_direct
from .quadfield import period_solution


@dataclass(frozen=True)
class PellSolution:
    p: int
    x: int
    y: int


def _minimal(D: int) -> tuple[int, int]:
    x, y, s = period_solution(D)
    if s == -1:
        x, y = x * x + D * y * y, 2 * x * y
    return x, y


def pell_min_solution(p: int) -> PellSolution:
    if p < 3 or p % 2 == 0 or not is_prime(p):
        raise DomainError(f"pell_min_solution expects an odd prime, got {p}")
    return PellSolution(p, *_minimal(p))


def _require_prime(p: int) -> None:
    if p < 2 or not is_prime(p):
        raise DomainError(f"{p} is not prime")


def conjecture_check(p: int) -> bool:
    """Does R_p in Q[sqrt p] satisfy the Pell criterion (R_2 directly for p=2)?"""
    _require_prime(p)
    if p == 2:
        return is_locally_associated_direct(2, 2)
    return pell_min_solution(p).y % p != 0


def theorem41_check(p: int) -> bool:
    """True iff the unit computation and the Pell criterion agree on R_p."""
    if p < 3 or p % 2 == 0 or not is_prime(p):
        raise DomainError(f"theorem41_check expects an odd prime, got {p}")
    return is_locally_associated_direct(p, p) == (pell_min_solution(p).y % p != 0)


@dataclass(frozen=True)
class ScanEntry:
    p: int
    holds: bool
    x: int
    y: int

    def csv_row(self, verbose: bool = False) -> str:
        row = f"{self.p},{int(self.holds)},{len(str(self.x))},{len(str(self.y))}"
        if verbose:
            row += f",{self.x},{self.y}"
        return row

    def to_json(self) -> dict:
        return {"p": self.p, "holds": self.holds, "x": str(self.x), "y": str(self.y)}


SCAN_HEADER = "p,holds,x_digits,y_digits"
SCAN_HEADER_VERBOSE = SCAN_HEADER + ",x,y"


def _scan_one(p: int) -> ScanEntry:
    x, y = _minimal(p)
    return ScanEntry(p, conjecture_check(p), x, y)


def read_checkpoint(path: str | os.PathLike) -> int:
    """Last prime completed according to a checkpoint file (0 if absent)."""
    path = Path(path)
    if not path.exists():
        return 0
    text = path.read_text().strip()
    return int(text) if text else 0


def conjecture_scan(
    p_max: int,
    start_after: int = 0,
    checkpoint: str | os.PathLike | None = None,
    workers: int = 1,
) -> Iterator[ScanEntry]:
    """Stream one entry per prime start_after < p <= p_max, ascending.

    With a checkpoint path the last completed prime is rewritten after each
    entry is consumed.
    """
    if p_max < 2:
        raise DomainError("p_max must be >= 2")
    primes = [p for p in primes_up_to(p_max) if p > start_after]
    if workers > 1:
        pool = ProcessPoolExecutor(workers)
        results = pool.map(_scan_one, primes, chunksize=16)
    else:
        pool = None
        results = map(_scan_one, primes)
    try:
        for entry in results:
            yield entry
            if checkpoint is not None:
                tmp = Path(str(checkpoint) + ".tmp")
                tmp.write_text(f"{entry.p}\n")
                os.replace(tmp, checkpoint)
    finally:
        if pool is not None:
            pool.shutdown(cancel_futures=True)
