"""Rule-based classification of R_n in Q[sqrt p], p prime.

A prime-power index q^k is settled by congruence rules where possible and by
the direct minimal-power computation on a small base order otherwise. A
composite index is locally associated iff every prime-power part is and the
L-values of the parts are pairwise coprime.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from itertools import combinations
from math import gcd

from .arith import PrimeFactorization, factorize, is_prime
from .errors import DomainError
from .laorder import (
    L_prime_power,
    MinPowerResult,
    is_locally_associated_direct,
    minimal_unit_power,
)
from .quadfield import make_field


class RuleTag(str, enum.Enum):
    CASE1 = "Case1"
    CASE2 = "Case2"
    CASE3 = "Case3"
    CASE4 = "Case4"
    CASE5 = "Case5"
    CASE6 = "Case6"
    CASE7 = "Case7"
    CASE8 = "Case8"
    CASE9 = "Case9"
    TRIVIAL_L1 = "TrivialL1"
    TOWERS = "Towers"
    COPRIME_COMBINER = "CoprimeCombiner"
    DIRECT_BASE_CASE = "DirectBaseCase"
    UNDETERMINED1 = "Undetermined1"
    UNDETERMINED2 = "Undetermined2"
    UNDETERMINED3 = "Undetermined3"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class TraceStep:
    subindex: int
    rule: RuleTag
    outcome: bool


@dataclass
class Classification:
    n: int
    d: int
    verdict: bool
    trace: list[TraceStep] = field(default_factory=list)
    direct_computations: list[MinPowerResult] = field(default_factory=list)

    @property
    def rules(self) -> list[RuleTag]:
        return [s.rule for s in self.trace]

    def to_json(self) -> dict:
        return {
            "n": str(self.n),
            "d": self.d,
            "verdict": self.verdict,
            "trace": [
                {"subindex": str(s.subindex), "rule": s.rule.value, "outcome": s.outcome}
                for s in self.trace
            ],
            "direct": [
                {"subindex": str(r.n), "m": str(r.m), "L": str(r.l_value)}
                for r in self.direct_computations
            ],
        }


def _require_prime(x: int, what: str) -> None:
    if x < 2 or not is_prime(x):
        raise DomainError(f"{what}={x} is not prime")


def classify_prime_power(
    q: int, k: int, p: int
) -> tuple[bool, RuleTag, list[MinPowerResult]]:
    """Classify R_{q^k} in Q[sqrt p].

    Returns the verdict, the rule that settled it, and every direct
    computation consulted along the way (possibly none).
    """
    _require_prime(q, "q")
    _require_prime(p, "p")
    if k < 1:
        raise DomainError("exponent must be >= 1")

    def direct(n: int) -> MinPowerResult:
        return minimal_unit_power(n, p)

    if q == p:
        base = direct(p)
        if k == 1:
            return base.locally_associated, RuleTag.DIRECT_BASE_CASE, [base]
        done = [base]
        verdict = base.locally_associated
        # Small p fall outside the generic argument; check R_{p^2} as well.
        if verdict and p in (2, 3):
            sq = direct(p * p)
            done.append(sq)
            verdict = sq.locally_associated
        return verdict, RuleTag.CASE4, done

    if q == 2:
        r = p % 8
        if k == 1:
            if r == 1:
                return True, RuleTag.TRIVIAL_L1, []
            if p % 4 == 3:
                return True, RuleTag.CASE1, []
            base = direct(2)
            return base.locally_associated, RuleTag.UNDETERMINED1, [base]
        if k == 2:
            if r == 1:
                return True, RuleTag.CASE2, []
            if p % 4 == 3:
                return False, RuleTag.CASE8, []
            base = direct(2)
            return base.locally_associated, RuleTag.CASE5, [base]
        return False, RuleTag.CASE9, []

    # q odd, q != p
    if p % 4 == 3 or q % 4 == 1:
        return False, RuleTag.CASE7, []
    # q = 3 (mod 4) and p != 3 (mod 4) from here on
    if k == 1:
        if q == 3:
            return True, RuleTag.CASE3, []
        base = direct(q)
        return base.locally_associated, RuleTag.UNDETERMINED2, [base]
    root_verdict, _, done = classify_prime_power(q, 1, p)
    if not root_verdict:
        return False, RuleTag.TOWERS, done
    sq = direct(q * q)
    done = done + [sq]
    if k == 2:
        return sq.locally_associated, RuleTag.UNDETERMINED3, done
    return sq.locally_associated, RuleTag.CASE6, done


def _combine(
    n: int, d: int, parts: list[tuple[int, bool, RuleTag]], l_values: list[int], direct
) -> Classification:
    trace = [TraceStep(pp, rule, ok) for pp, ok, rule in parts]
    verdict = all(ok for _, ok, _ in parts)
    if len(parts) > 1:
        coprime = all(gcd(a, b) == 1 for a, b in combinations(l_values, 2))
        trace.append(TraceStep(n, RuleTag.COPRIME_COMBINER, coprime))
        verdict = verdict and coprime
    return Classification(n, d, verdict, trace, direct)


def _factor(n: int | PrimeFactorization) -> PrimeFactorization:
    if isinstance(n, PrimeFactorization):
        return n
    if n < 1:
        raise DomainError(f"index must be a positive integer, got {n}")
    return factorize(n)


def classify(n: int | PrimeFactorization, p: int) -> Classification:
    """Fast verdict for R_n in Q[sqrt p], p prime."""
    _require_prime(p, "p")
    f = _factor(n)
    parts, l_values, direct = [], [], []
    for q, k in f:
        ok, rule, done = classify_prime_power(q, k, p)
        parts.append((q**k, ok, rule))
        l_values.append(L_prime_power(q, k, p))
        direct.extend(done)
    return _combine(f.value, p, parts, l_values, direct)


def classify_general(n: int | PrimeFactorization, d: int) -> Classification:
    """Verdict for any squarefree d > 1; congruence rules only when d is prime."""
    make_field(d)
    if is_prime(d):
        return classify(n, d)
    f = _factor(n)
    parts, l_values, direct = [], [], []
    for q, k in f:
        res = minimal_unit_power(PrimeFactorization(((q, k),)), d)
        parts.append((q**k, res.locally_associated, RuleTag.DIRECT_BASE_CASE))
        l_values.append(res.l_value)
        direct.append(res)
    return _combine(f.value, d, parts, l_values, direct)


def classify_direct(n: int | PrimeFactorization, d: int) -> Classification:
    """Oracle-only classification of the whole index, as a Classification."""
    f = _factor(n)
    res = minimal_unit_power(f, d)
    trace = [TraceStep(f.value, RuleTag.DIRECT_BASE_CASE, res.locally_associated)]
    if f.value == 1:
        trace = []
    return Classification(f.value, d, res.locally_associated, trace, [res])


def cross_validate(n: int | PrimeFactorization, p: int) -> bool:
    return classify(n, p).verdict == is_locally_associated_direct(n, p)


def compact_rules(c: Classification) -> str:
    return ";".join(s.rule.value for s in c.trace)

