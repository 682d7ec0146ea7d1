import numpy as np
import pytest
from sympy import Matrix, igcd, ilcm, prod

from closure_homology.utils.snf import (
    int_dot, integer_kernel, integer_rank, invariant_factors, lattice_contains, nullspace_mod_p, rank_mod_p,
    same_lattice, smith_normal_form, solve_in_lattice,
)


def _random_matrices(count, seed=11):
    rng = np.random.default_rng(seed)
    for _ in range(count):
        rows, cols = rng.integers(1, 7, size=2)
        yield rng.integers(-9, 10, size=(rows, cols))


@pytest.mark.parametrize("matrix", list(_random_matrices(40)))
def test_smith_form_factorizes_matrix(matrix):
    snf = smith_normal_form(matrix, with_inverses=True)
    assert np.array_equal(int_dot(int_dot(snf.U, matrix), snf.V), snf.D)
    assert abs(Matrix(snf.U.tolist()).det()) == 1
    assert abs(Matrix(snf.V.tolist()).det()) == 1
    assert np.array_equal(int_dot(snf.U, snf.U_inv), np.eye(matrix.shape[0], dtype=np.int64))
    assert np.array_equal(int_dot(snf.V, snf.V_inv), np.eye(matrix.shape[1], dtype=np.int64))


@pytest.mark.parametrize("matrix", list(_random_matrices(40, seed=12)))
def test_smith_diagonal_divisibility_and_rank(matrix):
    snf = smith_normal_form(matrix)
    assert all(d > 0 for d in snf.diagonal)
    assert all(b % a == 0 for a, b in zip(snf.diagonal, snf.diagonal[1:]))
    assert snf.rank == Matrix(matrix.tolist()).rank()
    # D 只有对角元非零
    off = np.array(snf.D, dtype=object)
    for k, d in enumerate(snf.diagonal):
        off[k, k] -= d
    assert not np.any(off != 0)


def test_known_invariant_factors():
    snf = smith_normal_form([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])
    assert snf.diagonal == [2, 6, 12]


def test_promotion_to_big_integers_keeps_result():
    """量级超过快速路径上界时提升为任意精度，结果不变"""
    matrix = np.array([[10**6, 3 * 10**6 + 1], [7 * 10**6 - 1, 5]], dtype=np.int64)
    fast = smith_normal_form(matrix)
    promoted = smith_normal_form(matrix, with_inverses=True, word_limit=100)
    assert promoted.diagonal == fast.diagonal
    assert np.array_equal(int_dot(int_dot(promoted.U, matrix), promoted.V), promoted.D)


def _scaled_hilbert(n):
    """Hilbert 矩阵乘以分母的最小公倍数，消元时数值增长很快"""
    scale = int(ilcm(*range(1, 2 * n)))
    return np.array([[scale // (i + j + 1) for j in range(n)] for i in range(n)], dtype=np.int64)


GROWTH_CASES = {
    "hilbert5": _scaled_hilbert(5),
    "hilbert7": _scaled_hilbert(7),
    "vandermonde7": np.vander(np.arange(2, 9), increasing=True).astype(np.int64),
    "wide-1e15": np.random.default_rng(14).integers(-10**15, 10**15, size=(4, 6)),
    "beyond-int64": np.array([[2**80 + 1, 2**70, 5], [3**50, 7, 2**63], [11, 2**64 - 1, 13]], dtype=object),
}


@pytest.mark.parametrize("matrix", list(GROWTH_CASES.values()), ids=list(GROWTH_CASES))
def test_smith_form_under_entry_growth(matrix):
    snf = smith_normal_form(matrix, with_inverses=True)
    assert np.array_equal(int_dot(int_dot(snf.U, matrix), snf.V), snf.D)
    assert np.array_equal(int_dot(snf.U, snf.U_inv), np.eye(matrix.shape[0], dtype=np.int64))
    assert np.array_equal(int_dot(snf.V, snf.V_inv), np.eye(matrix.shape[1], dtype=np.int64))
    assert all(b % a == 0 for a, b in zip(snf.diagonal, snf.diagonal[1:]))
    # 第一个不变因子是全部元素的最大公因数，方阵时不变因子之积是 |det|
    reference = Matrix(matrix.tolist())
    assert snf.rank == reference.rank()
    assert snf.diagonal[0] == igcd(*[int(x) for x in matrix.flatten()])
    if reference.rows == reference.cols:
        assert prod(snf.diagonal) == abs(reference.det())


@pytest.mark.parametrize("word_limit", [16, 1000, 2**31])
@pytest.mark.parametrize("matrix", list(_random_matrices(12, seed=15)))
def test_promotion_threshold_does_not_change_result(matrix, word_limit):
    fast = smith_normal_form(matrix)
    promoted = smith_normal_form(matrix, with_inverses=True, word_limit=word_limit)
    assert promoted.diagonal == fast.diagonal
    assert np.array_equal(int_dot(int_dot(promoted.U, matrix), promoted.V), promoted.D)
    assert np.array_equal(int_dot(promoted.V, promoted.V_inv), np.eye(matrix.shape[1], dtype=np.int64))


def test_promotion_happens_before_overflow():
    assert smith_normal_form([[20, 3]], word_limit=16).D.dtype == object
    big = np.array([[2**40, 1], [1, 2**40]], dtype=np.int64)
    snf = smith_normal_form(big, with_inverses=True)
    assert snf.diagonal == [1, 2**80 - 1]


def test_zero_and_empty_matrices():
    assert smith_normal_form(np.zeros((3, 2), dtype=np.int64)).diagonal == []
    assert integer_rank(np.zeros((0, 4), dtype=np.int64)) == 0


@pytest.mark.parametrize("matrix", list(_random_matrices(25, seed=13)))
def test_integer_kernel_is_saturated_basis(matrix):
    K, left = integer_kernel(matrix)
    cols = matrix.shape[1]
    assert K.shape == (cols, cols - Matrix(matrix.tolist()).rank())
    if K.shape[1]:
        assert not np.any(int_dot(matrix, K) != 0)
        assert np.array_equal(int_dot(left, K), np.eye(K.shape[1], dtype=np.int64))


def test_lattice_membership():
    generators = [[2, 0], [0, 3]]
    assert lattice_contains(generators, [[4], [9]])
    assert not lattice_contains(generators, [[1], [0]])
    assert solve_in_lattice(generators, [[4], [9]]).tolist() == [[2], [3]]
    assert same_lattice([[2, 0], [0, 1]], [[2, 2], [0, 1]])
    assert not same_lattice([[2, 0], [0, 1]], [[1, 0], [0, 1]])


def test_mod_p_elimination():
    assert rank_mod_p([[2]], 2) == 0
    assert rank_mod_p([[2]], 3) == 1
    assert rank_mod_p([[1, 1], [1, 1]], 5) == 1
    basis = nullspace_mod_p([[1, 1, 0]], 2)
    assert basis.shape == (3, 2)
    assert not np.any((np.array([[1, 1, 0]]) @ basis) % 2)


def test_invariant_factor_normalization():
    assert invariant_factors([4, 6, 0]) == (1, [2, 12])
    assert invariant_factors([1, 1]) == (0, [])
    assert invariant_factors([2, 3]) == (0, [6])
    assert invariant_factors([0, 0, 2, 2]) == (2, [2, 2])
