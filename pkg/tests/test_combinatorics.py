import itertools
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fitails.combinatorics import (
    GroupRingElement,
    Injection,
    Permutation,
    bracket_basis,
    compose,
    delta,
    derangements,
    enumerate_injections,
    expand_bracket_product,
    falling_factorial,
    invert,
    oi_decompose,
    shuffle,
    standardize,
)
from fitails.linalg import IntMatrix, rank


def inj(images, n):
    return Injection(tuple(images), n)


def test_injection_validation():
    with pytest.raises(ValueError):
        inj([1, 1], 3)
    with pytest.raises(ValueError):
        inj([4], 3)
    with pytest.raises(ValueError):
        inj([1, 2, 3], 2)
    assert str(inj([3, 1], 3)) == "[3,1]"
    assert Injection.parse("[3,1]", 3) == inj([3, 1], 3)


def test_compose_examples():
    assert compose(inj([1, 2], 3), inj([1, 2, 3], 3)).images == (1, 2)
    f = inj([2, 1], 2)
    assert compose(f, f).images == (1, 2)
    assert compose(inj([1, 3], 3), inj([2, 4, 5], 5)) == inj([2, 5], 5)
    with pytest.raises(ValueError):
        compose(inj([1, 3], 3), inj([1, 2], 4))


def test_delta():
    assert delta(1, 2).images == (2,)
    assert delta(3, 3).images == (1, 2)
    assert delta(2, 4) == inj([1, 3, 4], 4)
    with pytest.raises(ValueError):
        delta(0, 3)
    with pytest.raises(ValueError):
        delta(4, 3)


def test_oi_decompose_examples():
    sigma, h = oi_decompose(inj([3, 1], 3))
    assert sigma.images == (2, 1) and h.images == (1, 3)
    f = inj([1, 4], 5)
    sigma, h = oi_decompose(f)
    assert sigma.images == (1, 2) and h == f
    sigma, h = oi_decompose(inj([2, 1], 2))
    assert sigma.images == (2, 1) and h.images == (1, 2)


def test_oi_decompose_exhaustive():
    for n in range(0, 9):
        for k in range(0, min(n, 6) + 1):
            if falling_factorial(n, k) > 20000:
                continue
            for f in enumerate_injections(k, n):
                sigma, h = oi_decompose(f)
                assert h.is_monotone()
                assert compose(Injection(sigma.images, k), h).images == f.images


def test_enumerate_injections():
    assert [f.images for f in enumerate_injections(0, 5)] == [()]
    assert len(enumerate_injections(2, 3)) == 6
    assert enumerate_injections(4, 3) == []
    for k in range(5):
        for n in range(7):
            fs = enumerate_injections(k, n)
            assert len(fs) == len({f.images for f in fs}) == (math.perm(n, k) if k <= n else 0)
            assert [f.images for f in fs] == sorted(f.images for f in fs)


def test_shuffle_examples():
    assert shuffle("a", "") == {("a",): 1}
    assert shuffle("a", "b") == {("a", "b"): 1, ("b", "a"): 1}
    assert len(shuffle((4, 5), ("x1", "x2"))) == 6
    with pytest.raises(ValueError):
        shuffle("ab", "bc")


@given(st.integers(0, 5), st.integers(0, 5))
def test_shuffle_counts(a, b):
    w1 = tuple(range(a))
    w2 = tuple(range(10, 10 + b))
    terms = shuffle(w1, w2)
    assert len(terms) == math.comb(a + b, a)
    assert set(terms.values()) <= {1}
    for w in terms:
        assert tuple(v for v in w if v < 10) == w1
        assert tuple(v for v in w if v >= 10) == w2


def test_expand_bracket_product_examples():
    assert str(expand_bracket_product([(1, 2)])) == "12 - 21"
    assert str(expand_bracket_product([(1, 2, 3)])) == "123 - 213 - 312 + 321"
    e = expand_bracket_product([(1, 2), (3, 4)])
    assert e == GroupRingElement.parse("1234 - 1243 - 2134 + 2143")
    with pytest.raises(ValueError):
        expand_bracket_product([(2, 1)])
    with pytest.raises(ValueError):
        expand_bracket_product([(1, 2, 2)])
    with pytest.raises(ValueError):
        expand_bracket_product([(3, 4), (1, 2)])


def test_invert_examples():
    assert invert(GroupRingElement.identity(3)) == GroupRingElement.identity(3)
    e = GroupRingElement.parse("123 - 213 - 312 + 321")
    assert str(invert(e)) == "123 - 213 - 231 + 321"


@st.composite
def group_ring_elements(draw, max_size=5):
    n = draw(st.integers(1, max_size))
    perms = list(itertools.permutations(range(1, n + 1)))
    picks = draw(st.lists(st.sampled_from(perms), max_size=6))
    coeffs = draw(st.lists(st.integers(-9, 9), min_size=len(picks), max_size=len(picks)))
    terms = {}
    for p, c in zip(picks, coeffs):
        terms[p] = terms.get(p, 0) + c
    return GroupRingElement(n, terms)


@given(group_ring_elements())
def test_invert_involution(e):
    assert invert(invert(e)) == e


@settings(max_examples=60)
@given(group_ring_elements(4), group_ring_elements(4), group_ring_elements(4))
def test_group_ring_associative(a, b, c):
    if not (a.size == b.size == c.size):
        return
    assert (a * b) * c == a * (b * c)


def test_group_ring_product_convention():
    # (p * q) has underlying permutation q o p
    p = GroupRingElement(3, {(2, 1, 3): 1})
    q = GroupRingElement(3, {(1, 3, 2): 1})
    prod = p * q
    assert list(prod.terms) == [(3, 1, 2)]


def test_derangements_examples():
    assert [derangements(n) for n in range(8)] == [1, 0, 1, 2, 9, 44, 265, 1854]


def test_derangements_brute_force():
    for n in range(7):
        count = sum(
            1 for p in itertools.permutations(range(n)) if all(p[i] != i for i in range(n))
        )
        assert derangements(n) == count


def test_bracket_basis_for_four_letters():
    listed = [
        [(1, 2, 3, 4)], [(1, 2, 4, 3)], [(1, 3, 2, 4)], [(1, 3, 4, 2)], [(1, 4, 2, 3)], [(1, 4, 3, 2)],
        [(1, 2), (3, 4)], [(1, 3), (2, 4)], [(1, 4), (2, 3)],
    ]
    got = list(bracket_basis([1, 2, 3, 4]))
    assert sorted(got) == sorted(listed)


@pytest.mark.parametrize("n", range(0, 6))
def test_bracket_basis_independent(n):
    elems = [expand_bracket_product(b) if b else GroupRingElement.identity(0) for b in bracket_basis(range(1, n + 1))]
    assert len(elems) == derangements(n)
    if not elems or n == 0:
        return
    index = {p: i for i, p in enumerate(itertools.permutations(range(1, n + 1)))}
    m = IntMatrix.from_columns([e.vector(index) for e in elems], len(index))
    assert rank(m) == len(elems)


def test_standardize():
    assert standardize((7, 2, 5)) == (3, 1, 2)
    assert standardize(()) == ()


def test_permutation():
    p = Permutation((2, 3, 1))
    assert p.inverse().images == (3, 1, 2)
    assert str(p) == "231"
    with pytest.raises(ValueError):
        Permutation((1, 1))
