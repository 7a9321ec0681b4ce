"""The L function, order membership and the minimal unit power.

The index-n order is R_n = Z[n*alpha] = {x + y*alpha : n | y}. With u the
fundamental unit and m the least exponent such that u^m lies in R_n, m always
divides L(n, d), and R_n is locally associated exactly when m == L(n, d).
"""

from __future__ import annotations

from dataclasses import dataclass

from .arith import PrimeFactorization, divisors_ascending, factorize, legendre
from .errors import DomainError
from .quadfield import ModQuadInt, QuadInt, fundamental_unit, make_field, pow_mod


@dataclass(frozen=True)
class MinPowerResult:
    n: int
    d: int
    l_value: int
    m: int
    locally_associated: bool


def _as_factorization(n: int | PrimeFactorization) -> PrimeFactorization:
    if isinstance(n, PrimeFactorization):
        return n
    if n < 1:
        raise DomainError(f"index must be a positive integer, got {n}")
    return factorize(n)


def L_prime_power(p: int, k: int, d: int) -> int:
    if p == 2:
        r = d % 8
        if r == 1:
            return 2 ** (k - 1)
        if r == 5:
            return 3 * 2 ** (k - 1)
        return 2**k
    return p ** (k - 1) * (p - legendre(d, p))


def L(n: int | PrimeFactorization, d: int) -> int:
    """Multiplicative L(n, d); accepts n as an integer or a factorization."""
    f = _as_factorization(n)
    result = 1
    for p, k in f:
        result *= L_prime_power(p, k, d)
    return result


def in_order(v: QuadInt | ModQuadInt, n: int) -> bool:
    if n < 1:
        raise DomainError("index must be positive")
    if isinstance(v, ModQuadInt) and v.modulus != n:
        raise DomainError(f"value reduced mod {v.modulus}, asked about R_{n}")
    return v.y % n == 0


def minimal_unit_power(n: int | PrimeFactorization, d: int) -> MinPowerResult:
    """Least divisor m of L(n, d) with u^m in R_n, searching divisors in order."""
    f = _as_factorization(n)
    field = make_field(d)
    index = f.value
    l_value = L(f, d)
    u = fundamental_unit(field)
    l_fact = factorize_l(f, d)
    for e in divisors_ascending(l_fact):
        if in_order(pow_mod(u, e, index), index):
            return MinPowerResult(index, d, l_value, e, e == l_value)
    raise AssertionError(f"u^L({index},{d}) not in R_{index}")


def factorize_l(f: PrimeFactorization, d: int) -> PrimeFactorization:
    """Factor L(n, d) piecewise so n itself need not be refactored."""
    merged: dict[int, int] = {}

    def add(q: int, e: int) -> None:
        if e:
            merged[q] = merged.get(q, 0) + e

    for p, k in f:
        if p == 2:
            r = d % 8
            add(2, k - 1 if r in (1, 5) else k)
            if r == 5:
                add(3, 1)
            continue
        add(p, k - 1)
        for q, e in factorize(p - legendre(d, p)):
            add(q, e)
    return PrimeFactorization(tuple(sorted(merged.items())))


def is_locally_associated_direct(n: int | PrimeFactorization, d: int) -> bool:
    return minimal_unit_power(n, d).locally_associated
