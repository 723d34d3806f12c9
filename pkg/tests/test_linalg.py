import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fitails import linalg
from fitails.linalg import (
    AbelianGroup,
    IntMatrix,
    abs_determinant,
    cokernel,
    invariant_factors,
    is_unimodular,
    kernel_saturated,
    lattices_equal,
    smith_normal_form,
    solve_integer,
    unimodular_inverse,
)

BACKENDS = linalg.available_backends()


def random_matrix(rng, rows, cols, lo=-9, hi=9, density=0.6):
    return IntMatrix.from_rows(
        [[rng.randint(lo, hi) if rng.random() < density else 0 for _ in range(cols)] for _ in range(rows)],
        cols=cols,
    )


def check_snf(m, snf):
    assert snf.U @ m @ snf.V == snf.D
    assert snf.D.is_diagonal()
    diag = snf.diagonal
    assert all(d > 0 for d in diag)
    assert all(b % a == 0 for a, b in zip(diag, diag[1:]))
    assert all(snf.D[i, i] == 0 for i in range(len(diag), min(m.rows, m.cols)))


@pytest.mark.parametrize("backend", BACKENDS)
def test_snf_examples(backend):
    z = IntMatrix(3, 4)
    snf = smith_normal_form(z, backend=backend)
    assert snf.diagonal == [] and snf.U == IntMatrix.identity(3) and snf.V == IntMatrix.identity(4)
    assert smith_normal_form(IntMatrix.from_rows([[2, 1], [1, 2]]), backend=backend).diagonal == [1, 3]
    assert smith_normal_form(IntMatrix.from_rows([[6, 0], [0, 4]]), backend=backend).diagonal == [2, 12]


@pytest.mark.parametrize("backend", BACKENDS)
def test_snf_random_reconstruction(backend):
    rng = random.Random(20240)
    for _ in range(200):
        m = random_matrix(rng, rng.randint(0, 7), rng.randint(0, 7))
        snf = smith_normal_form(m, backend=backend)
        check_snf(m, snf)
        assert is_unimodular(snf.U) and is_unimodular(snf.V)


def test_backends_agree():
    if len(BACKENDS) < 2:
        pytest.skip("compiled kernel not built")
    rng = random.Random(7)
    for _ in range(200):
        m = random_matrix(rng, rng.randint(1, 9), rng.randint(1, 9))
        a = smith_normal_form(m, backend="cython")
        b = smith_normal_form(m, backend="python")
        assert (a.U, a.D, a.V) == (b.U, b.D, b.V)


@pytest.mark.parametrize("backend", BACKENDS)
def test_snf_big_entries(backend):
    # entries beyond 64 bits force the arbitrary-precision path
    m = IntMatrix.from_rows([[2**70, 3], [5, 2**65 + 1], [7, 11]])
    snf = smith_normal_form(m, backend=backend)
    check_snf(m, snf)
    m2 = IntMatrix.from_rows([[2**61 + 1, 2**61 - 1], [2**61 - 3, 2**61 + 5]])
    snf2 = smith_normal_form(m2, backend=backend)
    check_snf(m2, snf2)
    assert math.prod(snf2.diagonal) == abs((2**61 + 1) * (2**61 + 5) - (2**61 - 1) * (2**61 - 3))


def test_determinant_matches_invariant_product():
    rng = random.Random(3)
    for _ in range(60):
        n = rng.randint(1, 6)
        m = random_matrix(rng, n, n, density=0.9)
        # Leibniz determinant
        from itertools import permutations

        det = 0
        for p in permutations(range(n)):
            sign = 1
            for i in range(n):
                for j in range(i + 1, n):
                    if p[i] > p[j]:
                        sign = -sign
            det += sign * math.prod(m[i, p[i]] for i in range(n))
        assert abs_determinant(m) == abs(det)


def test_cokernel_examples():
    xi0 = IntMatrix.from_rows([[2, 1, 1, 2, 2, 1], [1, 2, 2, 1, 1, 2]])
    assert cokernel(xi0) == AbelianGroup(0, (3,))
    assert cokernel(IntMatrix.from_rows([[1] * 6, [1] * 6])) == AbelianGroup(1)
    xi2 = IntMatrix.from_rows([[1, 0, 0, 1, 1, 0], [0, 1, 1, 0, 0, 1]])
    assert cokernel(xi2).is_zero()
    assert cokernel(IntMatrix(3, 0)) == AbelianGroup(3)


def test_cokernel_invariance():
    rng = random.Random(11)
    for _ in range(60):
        r, c = rng.randint(1, 6), rng.randint(1, 6)
        m = random_matrix(rng, r, c)
        base = cokernel(m)
        rp = list(range(r))
        cp = list(range(c))
        rng.shuffle(rp)
        rng.shuffle(cp)
        permuted = IntMatrix.from_rows([[m[i, j] for j in cp] for i in rp], cols=c)
        assert cokernel(permuted) == base
        # unimodular change of basis on both sides
        u = smith_normal_form(random_matrix(rng, r, r)).U
        v = smith_normal_form(random_matrix(rng, c, c)).V
        assert cokernel(u @ m @ v) == base


def test_kernel_examples():
    assert kernel_saturated(IntMatrix.identity(3)) == []
    ker = kernel_saturated(IntMatrix.from_rows([[1, 1]]))
    assert ker in ([[1, -1]], [[-1, 1]])


def test_kernel_rank_nullity_and_saturation():
    rng = random.Random(5)
    for _ in range(100):
        r, c = rng.randint(1, 6), rng.randint(1, 7)
        m = random_matrix(rng, r, c)
        ker = kernel_saturated(m)
        rk = len(invariant_factors(m))
        assert len(ker) == c - rk
        for v in ker:
            assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in m.data)
        if ker:
            basis = IntMatrix.from_columns(ker, c)
            assert set(invariant_factors(basis)) == {1}


def test_unimodular_inverse():
    rng = random.Random(9)
    for _ in range(30):
        n = rng.randint(1, 6)
        u = smith_normal_form(random_matrix(rng, n, n)).U
        assert u @ unimodular_inverse(u) == IntMatrix.identity(n)
    with pytest.raises(ValueError):
        unimodular_inverse(IntMatrix.from_rows([[2]]))


def test_solve_integer():
    m = IntMatrix.from_rows([[2, 0], [0, 3]])
    assert solve_integer(m, [4, 9]) == [2, 3]
    assert solve_integer(m, [1, 0]) is None


def test_lattices_equal():
    assert lattices_equal([[1, 0], [1, -1]], [[1, 0], [0, 1]], 2)
    assert not lattices_equal([[1, 1]], [[1, 0], [0, 1]], 2)
    assert not lattices_equal([[2, 0]], [[1, 0]], 2)
    assert lattices_equal([], [], 3)


def test_abelian_group_normalization():
    g = AbelianGroup.from_cyclic(0, [27] + [45] * 4 + [3] * 5)
    assert g.invariant_factors == (3, 3, 3, 3, 3, 9, 45, 45, 45, 135)
    assert str(AbelianGroup()) == "0"
    assert str(AbelianGroup(1)) == "Z"
    assert str(AbelianGroup(4, (3,))) == "Z^4 (+) Z/3"
    assert str(AbelianGroup(0, (2, 2, 4))) == "(Z/2)^2 (+) Z/4"
    assert AbelianGroup.from_json(g.to_json()) == g
    with pytest.raises(ValueError):
        AbelianGroup(0, (2, 3))
    with pytest.raises(ValueError):
        AbelianGroup(0, (1,))


@given(st.lists(st.integers(0, 60), max_size=8), st.integers(0, 3))
def test_abelian_group_from_cyclic_matches_snf(orders, free):
    g = AbelianGroup.from_cyclic(free, orders)
    n = len(orders)
    diag = IntMatrix(n + free, n)
    for i, o in enumerate(orders):
        diag.data[i][i] = o
    assert cokernel(diag) == g


def test_backend_env_override(monkeypatch):
    monkeypatch.setenv("FITAILS_BACKEND", "python")
    assert linalg.default_backend() == "python"
    monkeypatch.setenv("FITAILS_BACKEND", "")
    assert linalg.default_backend() == BACKENDS[0]
