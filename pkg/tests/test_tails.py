import math
import random

import pytest

from fitails.catalan import catalan_set
from fitails.linalg import AbelianGroup
from fitails.presentation import load_presentation, parse_presentation
from fitails.tails import (
    MatrixTooLarge,
    TailProfile,
    effective_poly_degree,
    evaluate_tail,
    multiplicity,
    oracle_check,
    tail_invariants,
)

from .gen import random_presentation


@pytest.fixture
def ex_a(fixtures_dir):
    return load_presentation(fixtures_dir / "first_example.fipres")


@pytest.fixture
def ex_b(fixtures_dir):
    return load_presentation(fixtures_dir / "second_example.fipres")


def test_profile_first_example(ex_a):
    p = tail_invariants(ex_a)
    assert [str(a) for a in p.invariants] == ["Z/3", "Z", "0", "0"]
    assert p.stable_from == 5 and p.degree == 3
    assert str(evaluate_tail(p, 6)) == "Z^5 (+) Z/3"
    assert effective_poly_degree(p) == 1


def test_profile_second_example(ex_b):
    p = tail_invariants(ex_b)
    assert [a.to_json() for a in p.invariants[:3]] == [
        {"free_rank": 0, "torsion": [27]},
        {"free_rank": 0, "torsion": [45]},
        {"free_rank": 0, "torsion": [3]},
    ]
    expected = AbelianGroup.from_cyclic(0, [(27, 1), (45, 4), (3, 5)])
    assert evaluate_tail(p, 5) == expected
    assert effective_poly_degree(p) == 2


def test_free_degree_zero():
    p = tail_invariants(parse_presentation("generators: 0 0 0\n"))
    assert p.invariants == (AbelianGroup(3),)
    assert p.stable_from == 0
    assert evaluate_tail(p, 4) == AbelianGroup(3)


def test_zero_profile():
    p = TailProfile(2, (AbelianGroup(), AbelianGroup(), AbelianGroup()))
    assert effective_poly_degree(p) == -1
    for n in range(3, 8):
        assert evaluate_tail(p, n).is_zero()


def test_all_torsion_poly_degree():
    p = TailProfile(2, (AbelianGroup(0, (2,)), AbelianGroup(0, (5,)), AbelianGroup()))
    assert effective_poly_degree(p) == 1


def test_below_range_rejected(ex_a):
    p = tail_invariants(ex_a)
    with pytest.raises(ValueError, match="n >= 5"):
        evaluate_tail(p, 4)


def test_oracle_reports(ex_a):
    r = oracle_check(ex_a, 5)
    assert r.equal is True and str(r.actual) == "Z^4 (+) Z/3"
    r = oracle_check(ex_a, 3)
    assert r.equal is None and r.predicted is not None
    free = parse_presentation("generators: 1 2\n")
    for n in range(0, 6):
        assert oracle_check(free, n).equal in (True, None)


def test_oracle_cap(ex_a):
    with pytest.raises(MatrixTooLarge):
        oracle_check(ex_a, 7, max_cells=1000)


def test_multiplicities_match_catalan_counts():
    for n in range(0, 12):
        for ell in range(0, n // 2 + 1):
            assert multiplicity(n, ell) == len(catalan_set(ell, n))
        assert sum(multiplicity(n, ell) for ell in range(n // 2 + 1)) == math.comb(n, n // 2)


def test_random_presentations_quick():
    rng = random.Random(101)
    for _ in range(8):
        z = random_presentation(rng, max_degree=2)
        p = tail_invariants(z)
        for n in (p.stable_from, p.stable_from + 1):
            r = oracle_check(z, n, profile=p)
            assert r.equal, (z, n, r)
            # free ranks: the Hilbert multiplicities are nonnegative and match
            assert r.actual.free_rank == sum(
                a.free_rank * multiplicity(n, ell) for ell, a in enumerate(p.invariants)
            )
