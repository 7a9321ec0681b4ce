"""Integer utilities: primality, factorization, Legendre symbols, divisors."""

from __future__ import annotations

import random
import re
from array import array
from dataclasses import dataclass
from functools import lru_cache
from math import gcd, isqrt, prod

from .errors import CapacityError, DomainError

MAX_INPUT = 1 << 64
TRIAL_LIMIT = 10**6

# Deterministic for every n < 3.3 * 10**24, which covers the 64-bit range.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


@lru_cache(maxsize=None)
def _sieve(limit: int) -> tuple[int, ...]:
    flags = bytearray([1]) * (limit + 1)
    flags[0:2] = b"\x00\x00"
    for i in range(2, isqrt(limit) + 1):
        if flags[i]:
            flags[i * i :: i] = bytearray(len(range(i * i, limit + 1, i)))
    return tuple(i for i, f in enumerate(flags) if f)


def primes_up_to(limit: int) -> list[int]:
    """All primes p <= limit, ascending."""
    if limit < 2:
        return []
    return list(_sieve(limit))


def _check_capacity(n: int) -> None:
    if n >= MAX_INPUT:
        raise CapacityError(f"{n} exceeds the supported bound 2^64")


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin test for 1 <= n < 2**64."""
    if n < 1:
        raise DomainError(f"is_prime expects a positive integer, got {n}")
    _check_capacity(n)
    if n < 4:
        return n >= 2
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class PrimeFactorization:
    """Prime factorization as ascending ``(prime, exponent)`` pairs."""

    factors: tuple[tuple[int, int], ...] = ()

    def __post_init__(self) -> None:
        last = 1
        for p, k in self.factors:
            if p <= last or k < 1:
                raise DomainError(f"invalid factorization entry ({p}, {k})")
            last = p

    @property
    def value(self) -> int:
        return prod(p**k for p, k in self.factors)

    @property
    def primes(self) -> list[int]:
        return [p for p, _ in self.factors]

    def prime_powers(self) -> list[int]:
        return [p**k for p, k in self.factors]

    def __iter__(self):
        return iter(self.factors)

    def __len__(self) -> int:
        return len(self.factors)

    def __str__(self) -> str:
        if not self.factors:
            return "1"
        return "*".join(f"{p}^{k}" for p, k in self.factors)


def _pollard_brent(n: int, rng: random.Random) -> int:
    """Return a nontrivial factor of the odd composite n."""
    while True:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g = r = q = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = gcd(abs(x - ys), n)
        if g != n:
            return g


def _split(n: int, out: dict[int, int], rng: random.Random) -> None:
    if n == 1:
        return
    if is_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    r = isqrt(n)
    if r * r == n:
        _split(r, out, rng)
        _split(r, out, rng)
        return
    f = _pollard_brent(n, rng)
    _split(f, out, rng)
    _split(n // f, out, rng)


@lru_cache(maxsize=None)
def _spf_table(limit: int) -> array:
    """Smallest prime factor of every k <= limit."""
    spf = array("i", range(limit + 1))
    # descending, so the smallest prime writes last
    for p in reversed(_sieve(isqrt(limit))):
        spf[p * p :: p] = array("i", [p]) * len(range(p * p, limit + 1, p))
    return spf


@lru_cache(maxsize=None)
def _prime_blocks(limit: int, size: int = 512) -> tuple[tuple[int, tuple[int, ...]], ...]:
    primes = _sieve(limit)
    return tuple(
        (prod(primes[i : i + size]), primes[i : i + size]) for i in range(0, len(primes), size)
    )


def _trial_divide(n: int, found: dict[int, int]) -> int:
    """Strip every prime factor <= TRIAL_LIMIT from n; return the cofactor."""
    if n <= TRIAL_LIMIT:
        spf = _spf_table(TRIAL_LIMIT)
        while n > 1:
            p = spf[n]
            found[p] = found.get(p, 0) + 1
            n //= p
        return n
    for block, primes in _prime_blocks(TRIAL_LIMIT):
        g = gcd(n, block)
        if g > 1:
            for p in primes:
                if g % p == 0:
                    k = 0
                    while n % p == 0:
                        n //= p
                        k += 1
                    found[p] = k
        if n <= TRIAL_LIMIT:
            return _trial_divide(n, found)
        if primes[-1] ** 2 > n:
            break
    return n


def factorize(n: int) -> PrimeFactorization:
    """Factor 1 <= n < 2**64: trial division to 10**6, then Pollard-Brent."""
    if n < 1:
        raise DomainError(f"factorize expects a positive integer, got {n}")
    _check_capacity(n)
    found: dict[int, int] = {}
    n = _trial_divide(n, found)
    if n > 1:
        # Fixed seed keeps factorization (and therefore timing) reproducible.
        _split(n, found, random.Random(n))
    return PrimeFactorization(tuple(sorted(found.items())))


_FACTORED_RE = re.compile(r"^\s*\d+(\s*\^\s*\d+)?(\s*\*\s*\d+(\s*\^\s*\d+)?)*\s*$")


def parse_index(text: str) -> PrimeFactorization:
    """Parse a plain integer or a pre-factored form such as ``2^1*3^8``.

    Pre-factored bases are checked for primality, so each base must be below
    2**64; the product itself may be arbitrarily large.
    """
    text = text.strip()
    if text.isdigit():
        n = int(text)
        if n < 1:
            raise DomainError("index must be positive")
        return factorize(n)
    if not _FACTORED_RE.match(text):
        raise DomainError(f"cannot parse index {text!r}")
    found: dict[int, int] = {}
    for part in text.split("*"):
        base, _, exp = part.partition("^")
        p, k = int(base), int(exp) if exp else 1
        if k < 1:
            raise DomainError(f"exponent must be positive in {part.strip()!r}")
        if p < 2 or not is_prime(p):
            raise DomainError(f"{p} is not prime")
        found[p] = found.get(p, 0) + k
    return PrimeFactorization(tuple(sorted(found.items())))


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a|p) for an odd prime p, by Euler's criterion."""
    if p < 3 or p % 2 == 0 or not is_prime(p):
        raise DomainError(f"legendre expects an odd prime modulus, got {p}")
    r = pow(a % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def divisors_ascending(f: PrimeFactorization) -> list[int]:
    divs = [1]
    for p, k in f:
        divs = [d * p**e for d in divs for e in range(k + 1)]
    return sorted(divs)


def binom_mod(n: int, k: int, q: int) -> int:
    """C(n, k) mod the prime q via Lucas' theorem."""
    if k < 0 or n < 0 or k > n:
        raise DomainError(f"binom_mod needs 0 <= k <= n, got n={n}, k={k}")
    result = 1
    while n or k:
        ni, ki = n % q, k % q
        if ki > ni:
            return 0
        num = den = 1
        for i in range(ki):
            num = num * (ni - i) % q
            den = den * (i + 1) % q
        result = result * num * pow(den, -1, q) % q
        n //= q
        k //= q
    return result
