"""
整数矩阵的Smith标准形与格运算

消元先在 int64 数组上进行(机器字快速路径)；每次行/列运算前估计结果的量级，
一旦可能超过 settings.SNF_WORD_LIMIT 就把所有数组提升为 object 类型(Python 任意精度整数)继续。
"""

import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np
from sympy import factorint

from closure_homology.core.config import settings

logger = logging.getLogger(__name__)


def as_int_matrix(matrix, rows: Optional[int] = None, cols: Optional[int] = None) -> np.ndarray:
    """把列表或数组规范化为二维整数矩阵(保留 object 类型以免截断大整数)"""
    arr = np.asarray(matrix)
    if arr.size == 0:
        r = rows if rows is not None else (arr.shape[0] if arr.ndim == 2 else 0)
        c = cols if cols is not None else (arr.shape[1] if arr.ndim == 2 else 0)
        return np.zeros((r, c), dtype=np.int64)
    if arr.ndim != 2:
        raise ValueError(f"需要二维矩阵，得到形状 {arr.shape}")
    if arr.dtype == object:
        return arr.copy()
    return arr.astype(np.int64)


def max_abs(arr: np.ndarray) -> int:
    if arr.size == 0:
        return 0
    return int(np.max(np.abs(arr)))


@dataclass
class SmithForm:
    """Smith标准形 D = U·M·V；U、V 为幺模矩阵，inverses 可选"""
    D: np.ndarray
    U: np.ndarray
    V: np.ndarray
    U_inv: Optional[np.ndarray]
    V_inv: Optional[np.ndarray]
    diagonal: List[int]

    @property
    def rank(self) -> int:
        return len(self.diagonal)

    @property
    def torsion(self) -> List[int]:
        return [d for d in self.diagonal if d > 1]


class _Eliminator:
    """在 D、U、V 及其逆上同步执行初等变换"""

    def __init__(self, matrix: np.ndarray, with_inverses: bool, word_limit: int):
        m, n = matrix.shape
        self.word_limit = word_limit
        self.promoted = matrix.dtype == object
        dtype = object if self.promoted else np.int64
        self.D = matrix.astype(dtype)
        self.U = np.eye(m, dtype=np.int64).astype(dtype)
        self.V = np.eye(n, dtype=np.int64).astype(dtype)
        self.U_inv = self.U.copy() if with_inverses else None
        self.V_inv = self.V.copy() if with_inverses else None
        if not self.promoted and max_abs(self.D) >= word_limit:
            self._promote()

    def _promote(self) -> None:
        logger.debug("Smith标准形: 数值增长超过机器字范围，提升为任意精度整数")
        self.promoted = True
        for name in ("D", "U", "V", "U_inv", "V_inv"):
            arr = getattr(self, name)
            if arr is not None:
                setattr(self, name, arr.astype(object))

    def _guard(self, q: int, *pairs: Tuple[np.ndarray, np.ndarray]) -> None:
        # 结果量级上界 |a| + |q|·|b|
        if self.promoted:
            return
        aq = abs(int(q))
        for a, b in pairs:
            if max_abs(a) + aq * max_abs(b) >= self.word_limit:
                self._promote()
                return

    def swap_rows(self, i: int, j: int) -> None:
        if i == j:
            return
        self.D[[i, j]] = self.D[[j, i]]
        self.U[[i, j]] = self.U[[j, i]]
        if self.U_inv is not None:
            self.U_inv[:, [i, j]] = self.U_inv[:, [j, i]]

    def swap_cols(self, i: int, j: int) -> None:
        if i == j:
            return
        self.D[:, [i, j]] = self.D[:, [j, i]]
        self.V[:, [i, j]] = self.V[:, [j, i]]
        if self.V_inv is not None:
            self.V_inv[[i, j]] = self.V_inv[[j, i]]

    def negate_row(self, i: int) -> None:
        self.D[i] = -self.D[i]
        self.U[i] = -self.U[i]
        if self.U_inv is not None:
            self.U_inv[:, i] = -self.U_inv[:, i]

    def add_row(self, target: int, source: int, q: int) -> None:
        """row_target += q·row_source"""
        pairs = [(self.D[target], self.D[source]), (self.U[target], self.U[source])]
        if self.U_inv is not None:
            pairs.append((self.U_inv[:, source], self.U_inv[:, target]))
        self._guard(q, *pairs)
        self.D[target] = self.D[target] + q * self.D[source]
        self.U[target] = self.U[target] + q * self.U[source]
        if self.U_inv is not None:
            self.U_inv[:, source] = self.U_inv[:, source] - q * self.U_inv[:, target]

    def add_col(self, target: int, source: int, q: int) -> None:
        """col_target += q·col_source"""
        pairs = [(self.D[:, target], self.D[:, source]), (self.V[:, target], self.V[:, source])]
        if self.V_inv is not None:
            pairs.append((self.V_inv[source], self.V_inv[target]))
        self._guard(q, *pairs)
        self.D[:, target] = self.D[:, target] + q * self.D[:, source]
        self.V[:, target] = self.V[:, target] + q * self.V[:, source]
        if self.V_inv is not None:
            self.V_inv[source] = self.V_inv[source] - q * self.V_inv[target]


def smith_normal_form(matrix, with_inverses: bool = False, word_limit: Optional[int] = None) -> SmithForm:
    """
    计算整数矩阵的Smith标准形

    Args:
        matrix: 整数矩阵(列表或numpy数组)
        with_inverses: 是否同时维护 U、V 的逆矩阵
        word_limit: 机器字快速路径的量级上界，默认取配置

    Returns:
        SmithForm，满足 D = U·M·V，对角元 d₁ | d₂ | … 均为正
    """
    M = as_int_matrix(matrix)
    m, n = M.shape
    el = _Eliminator(M, with_inverses, word_limit or settings.SNF_WORD_LIMIT)

    diagonal: List[int] = []
    t = 0
    while t < min(m, n):
        sub = el.D[t:, t:]
        nz = np.argwhere(sub != 0)
        if len(nz) == 0:
            break
        # 选绝对值最小的非零元作为主元
        values = np.abs(sub[nz[:, 0], nz[:, 1]])
        k = int(np.argmin(values))
        el.swap_rows(t, t + int(nz[k, 0]))
        el.swap_cols(t, t + int(nz[k, 1]))

        while True:
            pivot = int(el.D[t, t])
            # 消去主元所在列
            for i in range(t + 1, m):
                entry = int(el.D[i, t])
                if entry:
                    el.add_row(i, t, -(entry // pivot))
            # 消去主元所在行
            for j in range(t + 1, n):
                entry = int(el.D[t, j])
                if entry:
                    el.add_col(j, t, -(entry // pivot))

            col_rest = np.nonzero(el.D[t + 1:, t])[0]
            row_rest = np.nonzero(el.D[t, t + 1:])[0]
            if len(col_rest) or len(row_rest):
                # 存在余数：把最小余数换到主元位置后重来
                candidates = [(abs(int(el.D[t + 1 + i, t])), "r", t + 1 + int(i)) for i in col_rest]
                candidates += [(abs(int(el.D[t, t + 1 + j])), "c", t + 1 + int(j)) for j in row_rest]
                _, kind, idx = min(candidates)
                if kind == "r":
                    el.swap_rows(t, idx)
                else:
                    el.swap_cols(t, idx)
                continue

            # 行列已清空，检查整除性
            rest = el.D[t + 1:, t + 1:]
            bad = np.argwhere(rest % pivot != 0) if rest.size else []
            if len(bad):
                el.add_row(t, t + 1 + int(bad[0][0]), 1)
                continue
            break

        if el.D[t, t] < 0:
            el.negate_row(t)
        diagonal.append(int(el.D[t, t]))
        t += 1

    return SmithForm(D=el.D, U=el.U, V=el.V, U_inv=el.U_inv, V_inv=el.V_inv, diagonal=diagonal)


# ----------------------------------------------------------------------
# 格运算
# ----------------------------------------------------------------------

def integer_kernel(matrix, cols: Optional[int] = None) -> Tuple[np.ndarray, np.ndarray]:
    """
    整数核的饱和基

    Args:
        matrix: 形状 (r, c) 的整数矩阵
        cols: 当矩阵为空时显式给出列数

    Returns:
        (K, K_left)：K 的列构成 ker 的基，K_left·K = I，且 K_left 把核中向量映到坐标
    """
    M = as_int_matrix(matrix, cols=cols)
    if M.shape[1] == 0:
        return np.zeros((0, 0), dtype=object), np.zeros((0, 0), dtype=object)
    snf = smith_normal_form(M, with_inverses=True)
    r = snf.rank
    return snf.V[:, r:].astype(object), snf.V_inv[r:, :].astype(object)


def solve_in_lattice(generators, vectors) -> Optional[np.ndarray]:
    """
    求整数解 X 使 G·X = vectors；若某列不在 G 的列格中返回 None

    Args:
        generators: 形状 (d, k) 的矩阵 G
        vectors: 形状 (d, s) 的矩阵
    """
    G = as_int_matrix(generators)
    B = as_int_matrix(vectors, rows=G.shape[0])
    d, k = G.shape
    if B.shape[1] == 0:
        return np.zeros((k, 0), dtype=object)
    if k == 0:
        return np.zeros((0, B.shape[1]), dtype=object) if not np.any(B != 0) else None
    snf = smith_normal_form(G)
    W = int_dot(snf.U, B)
    r = snf.rank
    if np.any(W[r:] != 0):
        return None
    Y = np.zeros((k, B.shape[1]), dtype=object)
    for i, di in enumerate(snf.diagonal):
        row = W[i]
        if any(int(x) % di for x in row):
            return None
        Y[i] = np.array([int(x) // di for x in row], dtype=object)
    return int_dot(snf.V, Y)


def lattice_contains(generators, vectors) -> bool:
    return solve_in_lattice(generators, vectors) is not None


def same_lattice(a, b) -> bool:
    """两组生成元张成同一个格"""
    return lattice_contains(a, b) and lattice_contains(b, a)


def integer_rank(matrix) -> int:
    M = as_int_matrix(matrix)
    if M.size == 0:
        return 0
    return smith_normal_form(M).rank


# ----------------------------------------------------------------------
# 素域上的消元
# ----------------------------------------------------------------------

def row_reduce_mod_p(matrix, p: int) -> Tuple[np.ndarray, List[int]]:
    """在 𝔽_p 上化为行最简形，返回 (R, 主元列)"""
    A = np.array(as_int_matrix(matrix), dtype=object) % p
    A = A.astype(np.int64)
    rows, cols = A.shape
    pivots: List[int] = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if len(nz) == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            A[[r, k]] = A[[k, r]]
        inv = pow(int(A[r, c]), -1, p)
        A[r] = (A[r] * inv) % p
        for i in range(rows):
            if i != r and A[i, c]:
                A[i] = (A[i] - A[i, c] * A[r]) % p
        pivots.append(c)
        r += 1
    return A, pivots


def rank_mod_p(matrix, p: int) -> int:
    M = as_int_matrix(matrix)
    if M.size == 0:
        return 0
    return len(row_reduce_mod_p(M, p)[1])


def nullspace_mod_p(matrix, p: int, cols: Optional[int] = None) -> np.ndarray:
    """𝔽_p 上零空间的基(按列)"""
    M = as_int_matrix(matrix, cols=cols)
    n = M.shape[1]
    if M.shape[0] == 0:
        return np.eye(n, dtype=np.int64)
    R, pivots = row_reduce_mod_p(M, p)
    free = [c for c in range(n) if c not in pivots]
    basis = np.zeros((n, len(free)), dtype=np.int64)
    for k, f in enumerate(free):
        basis[f, k] = 1
        for r, c in enumerate(pivots):
            basis[c, k] = (-R[r, f]) % p
    return basis


# ----------------------------------------------------------------------
# 有限生成阿贝尔群的规范化
# ----------------------------------------------------------------------

def invariant_factors(cyclic_orders: Sequence[int]) -> Tuple[int, List[int]]:
    """
    把循环群直和 ⊕ ℤ/nᵢ 规范化为 ℤ^b ⊕ ℤ/d₁ ⊕ … (d₁ | d₂ | …)

    Args:
        cyclic_orders: 各循环因子的阶，0 表示 ℤ，1 表示平凡群

    Returns:
        (自由秩, 不变因子列表)
    """
    betti = 0
    prime_powers = {}
    for order in cyclic_orders:
        order = abs(int(order))
        if order == 0:
            betti += 1
        elif order > 1:
            for prime, exp in factorint(order).items():
                prime_powers.setdefault(prime, []).append(prime ** exp)
    if not prime_powers:
        return betti, []
    length = max(len(v) for v in prime_powers.values())
    factors = [1] * length
    for prime, powers in prime_powers.items():
        powers = sorted(powers)
        # 最大的幂放到最后一个不变因子
        for offset, power in enumerate(reversed(powers)):
            factors[length - 1 - offset] *= power
    return betti, [f for f in factors if f > 1]


def int_dot(a, b) -> np.ndarray:
    """整数矩阵乘法；能证明不溢出时走 int64，否则用任意精度"""
    A = as_int_matrix(a)
    B = as_int_matrix(b, rows=A.shape[1])
    if A.shape[1] == 0:
        return np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    bound = max_abs(A) * max_abs(B) * A.shape[1]
    if bound < settings.SNF_WORD_LIMIT:
        return A.astype(np.int64).dot(B.astype(np.int64))
    return A.astype(object).dot(B.astype(object))
