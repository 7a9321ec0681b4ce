import json
from itertools import combinations
from math import gcd

import pytest

from realquad.arith import factorize, parse_index, primes_up_to
from realquad.classify import (
    RuleTag,
    classify,
    classify_direct,
    classify_general,
    classify_prime_power,
    compact_rules,
    cross_validate,
)
from realquad.errors import DomainError
from realquad.laorder import L, is_locally_associated_direct, minimal_unit_power
from realquad.quadfield import fundamental_unit, make_field
from realquad.tables import squarefree_range

PRIMES_60 = primes_up_to(60)


def test_prime_power_examples():
    ok, rule, _ = classify_prime_power(2, 2, 17)
    assert (ok, rule) == (True, RuleTag.CASE2)
    ok, rule, _ = classify_prime_power(2, 3, 13)
    assert (ok, rule) == (False, RuleTag.CASE9)
    ok, rule, _ = classify_prime_power(5, 1, 13)
    assert (ok, rule) == (False, RuleTag.CASE7)
    ok, rule, done = classify_prime_power(3, 8, 3)
    assert (ok, rule) == (True, RuleTag.CASE4)
    assert done[0].n == 3 and done[0].locally_associated


def test_prime_power_rejects_non_primes():
    with pytest.raises(DomainError):
        classify_prime_power(4, 1, 3)
    with pytest.raises(DomainError):
        classify_prime_power(3, 1, 15)
    with pytest.raises(DomainError):
        classify(6, 10)


@pytest.mark.parametrize(
    "q,k,p,rule",
    [
        (2, 1, 17, RuleTag.TRIVIAL_L1),
        (2, 1, 7, RuleTag.CASE1),
        (2, 1, 5, RuleTag.UNDETERMINED1),
        (2, 2, 7, RuleTag.CASE8),
        (2, 2, 13, RuleTag.CASE5),
        (3, 1, 5, RuleTag.CASE3),
        (7, 1, 5, RuleTag.UNDETERMINED2),
        (3, 2, 5, RuleTag.UNDETERMINED3),
        (3, 3, 5, RuleTag.CASE6),
        (7, 1, 3, RuleTag.CASE7),
        (13, 1, 13, RuleTag.DIRECT_BASE_CASE),
        (13, 2, 13, RuleTag.CASE4),
    ],
)
def test_dispatch(q, k, p, rule):
    ok, got, _ = classify_prime_power(q, k, p)
    assert got == rule
    assert ok == is_locally_associated_direct(q**k, p)


def test_worked_examples():
    assert classify(13122, 3).verdict
    c = classify(1868059634, 73)
    assert not c.verdict
    c = classify(1965641640625, 13)
    assert not c.verdict
    last = c.trace[-1]
    assert last.rule == RuleTag.COPRIME_COMBINER and not last.outcome
    assert L(5**7, 13) % 2 == 0 and L(53**3, 13) % 2 == 0
    for p in PRIMES_60:
        c = classify(1, p)
        assert c.verdict and c.trace == []


def test_prefactored_index():
    assert classify(parse_index("2^1*3^8"), 3).verdict
    # far beyond the factorization bound; only the prime powers matter
    big = parse_index("2^1*3^40*18446744073709551557^2")
    c = classify(big, 3)
    assert [s.subindex for s in c.trace[:-1]] == big.prime_powers()


def test_general_matches_prime_classifier():
    for p in PRIMES_60:
        for n in range(1, 80):
            assert classify_general(n, p).verdict == classify(n, p).verdict


def test_general_composite_d():
    # u = 3 + sqrt 10 has odd sqrt-coefficient, L(2, 10) = 2, so m = 2
    assert fundamental_unit(10).sqrt_coords() == (3, 1, 1)
    assert L(2, 10) == 2
    assert classify_general(2, 10).verdict
    for d in squarefree_range(2, 120):
        c = classify_general(6, d)
        expected = (
            is_locally_associated_direct(2, d)
            and is_locally_associated_direct(3, d)
            and gcd(L(2, d), L(3, d)) == 1
        )
        assert c.verdict == expected == is_locally_associated_direct(6, d)


def test_cross_validate_small_sweep():
    for p in PRIMES_60:
        for n in range(1, 150):
            assert cross_validate(n, p)


def test_coprimality_necessity():
    for p in PRIMES_60:
        for n in range(2, 300):
            f = factorize(n)
            ls = [L(q**k, p) for q, k in f]
            if any(gcd(a, b) > 1 for a, b in combinations(ls, 2)):
                assert not is_locally_associated_direct(n, p)


def test_trace_completeness():
    for p in PRIMES_60:
        for n in range(2, 300):
            c = classify(n, p)
            powers = [s.subindex for s in c.trace if s.rule != RuleTag.COPRIME_COMBINER]
            assert sorted(powers) == sorted(factorize(n).prime_powers())
            assert c.trace


def test_stability_in_k():
    for p in primes_up_to(30):
        for q in primes_up_to(13):
            if q == 2:
                continue
            ref = q if q == p else q * q
            base = is_locally_associated_direct(ref, p)
            for k in (3, 4):
                assert is_locally_associated_direct(q**k, p) == base
                assert classify(q**k, p).verdict == base


def test_all_rules_fire_in_sweep():
    seen = set()
    for p in primes_up_to(200):
        for n in range(1, 301):
            seen.update(classify(n, p).rules)
    assert seen == set(RuleTag)


def test_json_shape():
    c = classify(1965641640625, 13)
    doc = json.loads(json.dumps(c.to_json()))
    assert set(doc) == {"n", "d", "verdict", "trace", "direct"}
    assert doc["n"] == "1965641640625" and doc["verdict"] is False
    assert all(set(s) == {"subindex", "rule", "outcome"} for s in doc["trace"])
    assert doc["direct"] == [{"subindex": "13", "m": "13", "L": "13"}]


def test_compact_rules_and_direct():
    assert compact_rules(classify(13122, 3)) == "Case1;Case4;CoprimeCombiner"
    c = classify_direct(13122, 3)
    assert c.verdict and c.direct_computations[0].m == 13122
    assert minimal_unit_power(13122, 3).l_value == 13122


def test_field_validation():
    with pytest.raises(DomainError):
        classify_general(3, 12)
    make_field(10)
