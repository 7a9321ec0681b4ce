import pytest

from oracles import brute_pell, sqrt_mul
from realquad.arith import primes_up_to
from realquad.errors import DomainError
from realquad.laorder import is_locally_associated_direct
from realquad.pell import (
    conjecture_check,
    conjecture_scan,
    pell_min_solution,
    read_checkpoint,
    theorem41_check,
)
from realquad.quadfield import fundamental_unit

ODD_PRIMES = primes_up_to(1000)[1:]


@pytest.mark.parametrize("p,x,y", [(3, 2, 1), (7, 8, 3), (5, 9, 4)])
def test_min_solution_examples(p, x, y):
    s = pell_min_solution(p)
    assert (s.x, s.y) == (x, y)


@pytest.mark.parametrize("p", [2, 9, 1, 15])
def test_min_solution_domain(p):
    with pytest.raises(DomainError):
        pell_min_solution(p)


def test_solutions_valid():
    for p in ODD_PRIMES:
        s = pell_min_solution(p)
        assert s.x * s.x - p * s.y * s.y == 1 and s.x > 0 and s.y > 0


def test_minimality_against_search():
    for p in primes_up_to(50)[1:]:
        s = pell_min_solution(p)
        assert brute_pell(p, s.y) == (s.x, s.y)


def test_minimal_solution_decides_divisibility():
    for p in primes_up_to(100)[1:]:
        s = pell_min_solution(p)
        xk, yk = s.x, s.y
        for _ in range(12):
            if s.y % p == 0:
                assert yk % p == 0
            xk, yk = sqrt_mul((xk, yk), (s.x, s.y), p)
            assert xk * xk - p * yk * yk == 1


def test_agrees_with_unit_group():
    for p in ODD_PRIMES:
        if p % 4 == 3:
            a, b, den = fundamental_unit(p).sqrt_coords()
            s = pell_min_solution(p)
            assert (den, a, b) == (1, s.x, s.y)


def test_conjecture_check_examples():
    assert conjecture_check(2)
    assert conjecture_check(7)
    assert conjecture_check(5)
    assert conjecture_check(2) == is_locally_associated_direct(2, 2)


def test_theorem41_examples():
    assert theorem41_check(3)
    assert theorem41_check(13)
    with pytest.raises(DomainError):
        theorem41_check(2)


def test_scan_examples():
    assert [(e.p, e.holds) for e in conjecture_scan(2)] == [(2, True)]
    assert [(e.p, e.holds) for e in conjecture_scan(10)] == [
        (2, True),
        (3, True),
        (5, True),
        (7, True),
    ]
    with pytest.raises(DomainError):
        list(conjecture_scan(1))


def test_scan_csv_rows():
    e = list(conjecture_scan(7))[-1]
    assert e.csv_row() == "7,1,1,1"
    assert e.csv_row(verbose=True) == "7,1,1,1,8,3"


def test_scan_checkpoint_and_resume(tmp_path):
    ckpt = tmp_path / "scan.ckpt"
    assert read_checkpoint(ckpt) == 0
    first = list(conjecture_scan(50, checkpoint=ckpt))
    assert read_checkpoint(ckpt) == 47
    it = conjecture_scan(100, start_after=read_checkpoint(ckpt), checkpoint=ckpt)
    rest = list(it)
    assert [e.p for e in first + rest] == primes_up_to(100)
    assert read_checkpoint(ckpt) == 97


def test_scan_parallel_matches_serial():
    serial = list(conjecture_scan(400))
    parallel = list(conjecture_scan(400, workers=2))
    assert serial == parallel
