"""Arithmetic in the ring of integers Z[alpha] of a real quadratic field.

Elements are stored in the basis {1, alpha} with alpha = (1 + sqrt d)/2 when
d = 1 (mod 4) and alpha = sqrt d otherwise, so alpha^2 = t*alpha + c with
(t, c) = (1, (d - 1)/4) or (0, d).
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from functools import lru_cache
from math import isqrt
from typing import Iterator

from .arith import factorize
from .errors import DomainError


@dataclass(frozen=True)
class FieldDesc:
    d: int
    half_basis: bool
    t: int
    c: int

    def __str__(self) -> str:
        return f"Q[sqrt({self.d})]"


@lru_cache(maxsize=4096)
def make_field(d: int) -> FieldDesc:
    if d <= 1:
        raise DomainError(f"d must be a squarefree integer > 1, got {d}")
    if any(k > 1 for _, k in factorize(d)):
        raise DomainError(f"d={d} is not squarefree")
    if d % 4 == 1:
        return FieldDesc(d, True, 1, (d - 1) // 4)
    return FieldDesc(d, False, 0, d)


def _field_of(f: FieldDesc | int) -> FieldDesc:
    return f if isinstance(f, FieldDesc) else make_field(f)


@dataclass(frozen=True)
class QuadInt:
    """The exact element x + y*alpha of the ring of integers."""

    field: FieldDesc
    x: int
    y: int

    @classmethod
    def one(cls, field: FieldDesc) -> QuadInt:
        return cls(field, 1, 0)

    @classmethod
    def from_sqrt_coords(cls, field: FieldDesc, a: int, b: int, den: int = 1) -> QuadInt:
        """Build (a + b*sqrt d)/den, den in {1, 2}; raises if not integral."""
        if den not in (1, 2):
            raise DomainError("denominator must be 1 or 2")
        if den == 1:
            a, b = 2 * a, 2 * b
        # now value = (a + b sqrt d)/2
        if field.half_basis:
            if (a - b) % 2:
                raise DomainError("not an algebraic integer")
            return cls(field, (a - b) // 2, b)
        if a % 2 or b % 2:
            raise DomainError("not an algebraic integer")
        return cls(field, a // 2, b // 2)

    def sqrt_coords(self) -> tuple[int, int, int]:
        """Return (a, b, den) with self = (a + b*sqrt d)/den in lowest terms."""
        if not self.field.half_basis:
            return self.x, self.y, 1
        a, b = 2 * self.x + self.y, self.y
        if a % 2 == 0 and b % 2 == 0:
            return a // 2, b // 2, 1
        return a, b, 2

    def _check(self, other: QuadInt) -> None:
        if other.field != self.field:
            raise DomainError(f"mixed fields {self.field} and {other.field}")

    def __mul__(self, other: QuadInt) -> QuadInt:
        if not isinstance(other, QuadInt):
            return NotImplemented
        self._check(other)
        f = self.field
        x1, y1, x2, y2 = self.x, self.y, other.x, other.y
        yy = y1 * y2
        return QuadInt(f, x1 * x2 + f.c * yy, x1 * y2 + x2 * y1 + f.t * yy)

    def __pow__(self, k: int) -> QuadInt:
        return power(self, k)

    def conjugate(self) -> QuadInt:
        # alpha' = t - alpha
        return QuadInt(self.field, self.x + self.field.t * self.y, -self.y)

    def norm(self) -> int:
        return norm(self)

    def reduce(self, n: int) -> ModQuadInt:
        return ModQuadInt(self.field, n, self.x % n, self.y % n)

    def __str__(self) -> str:
        basis = "sqrt" + str(self.field.d) if not self.field.half_basis else "alpha"
        return f"{self.x} + {self.y}*{basis}"


@dataclass(frozen=True)
class ModQuadInt:
    """Coordinates of an element reduced modulo n."""

    field: FieldDesc
    modulus: int
    x: int
    y: int

    def __mul__(self, other: ModQuadInt) -> ModQuadInt:
        if not isinstance(other, ModQuadInt):
            return NotImplemented
        if other.modulus != self.modulus:
            raise DomainError(f"mixed moduli {self.modulus} and {other.modulus}")
        if other.field != self.field:
            raise DomainError(f"mixed fields {self.field} and {other.field}")
        f, n = self.field, self.modulus
        yy = self.y * other.y
        return ModQuadInt(
            f,
            n,
            (self.x * other.x + f.c * yy) % n,
            (self.x * other.y + other.x * self.y + f.t * yy) % n,
        )


def norm(v: QuadInt) -> int:
    # N(x + y alpha) = x^2 + t*x*y - c*y^2
    f = v.field
    return v.x * v.x + f.t * v.x * v.y - f.c * v.y * v.y


def mul(a: QuadInt, b: QuadInt) -> QuadInt:
    return a * b


def power(a: QuadInt, k: int) -> QuadInt:
    if k < 0:
        raise DomainError("negative exponent")
    result = QuadInt.one(a.field)
    base = a
    while k:
        if k & 1:
            result = result * base
        k >>= 1
        if k:
            base = base * base
    return result


def pow_mod(a: QuadInt | ModQuadInt, k: int, n: int) -> ModQuadInt:
    """Reduction mod n of a**k, reducing at every step."""
    if n < 1:
        raise DomainError("modulus must be positive")
    if k < 0:
        raise DomainError("negative exponent")
    f = a.field
    base = ModQuadInt(f, n, a.x % n, a.y % n)
    result = ModQuadInt(f, n, 1 % n, 0)
    while k:
        if k & 1:
            result = result * base
        k >>= 1
        if k:
            base = base * base
    return result


def pqa(P0: int, Q0: int, D: int) -> Iterator[tuple[int, int, int, int]]:
    """Continued fraction of (P0 + sqrt D)/Q0 in exact integer arithmetic.

    Yields (a_i, G_i, B_i, Q_{i+1}) with G_i^2 - D*B_i^2 = (-1)^(i+1) * Q_{i+1} * Q0.
    Requires D > 0 non-square, Q0 > 0 and Q0 | D - P0^2.
    """
    if Q0 <= 0 or (D - P0 * P0) % Q0:
        raise DomainError("pqa needs Q0 > 0 dividing D - P0^2")
    r = isqrt(D)
    if r * r == D:
        raise DomainError(f"{D} is a perfect square")
    P, Q = P0, Q0
    G_prev, G = -P0, Q0
    B_prev, B = 1, 0
    while True:
        a = (P + r) // Q
        G_prev, G = G, a * G + G_prev
        B_prev, B = B, a * B + B_prev
        P = a * Q - P
        Q = (D - P * P) // Q
        yield a, G, B, Q


def _first_return(P0: int, Q0: int, D: int) -> tuple[int, int, int]:
    """First convergent closing a period: (G, B, s) with G^2 - D*B^2 = s*Q0^2."""
    for i, (_, G, B, Q) in enumerate(pqa(P0, Q0, D)):
        if Q == Q0:
            return G, B, (-1) ** (i + 1)
    raise AssertionError("unreachable")


def period_solution(D: int) -> tuple[int, int, int]:
    """Minimal positive (x, y, s) with x^2 - D*y^2 = s, s = +-1, from sqrt D."""
    return _first_return(0, 1, D)


class _UnitCache:
    """Per-d memo of fundamental units; fills are idempotent."""

    def __init__(self) -> None:
        self._units: dict[int, QuadInt] = {}
        self._lock = threading.Lock()

    def get(self, d: int) -> QuadInt | None:
        return self._units.get(d)

    def put(self, u: QuadInt) -> QuadInt:
        with self._lock:
            return self._units.setdefault(u.field.d, u)

    def items(self) -> list[tuple[int, QuadInt]]:
        with self._lock:
            return sorted(self._units.items())

    def clear(self) -> None:
        with self._lock:
            self._units.clear()

    def __contains__(self, d: int) -> bool:
        return d in self._units

    def __len__(self) -> int:
        return len(self._units)


unit_cache = _UnitCache()


def compute_fundamental_unit(f: FieldDesc) -> QuadInt:
    if f.half_basis:
        # (G + B sqrt d)/2 with G^2 - d B^2 = +-4
        G, B, _ = _first_return(1, 2, f.d)
        return QuadInt(f, (G - B) // 2, B)
    G, B, _ = _first_return(0, 1, f.d)
    return QuadInt(f, G, B)


def fundamental_unit(f: FieldDesc | int) -> QuadInt:
    """Smallest unit > 1 of the ring of integers (memoized per d)."""
    f = _field_of(f)
    u = unit_cache.get(f.d)
    if u is None:
        u = unit_cache.put(compute_fundamental_unit(f))
    return u
