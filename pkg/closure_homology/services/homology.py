"""
同调与上同调

整数系数：Hₙ = ker ∂ₙ / im ∂ₙ₊₁ 在核格坐标下计算。取 ker ∂ₙ 的饱和基 K 及其左逆 L，
边界的坐标 W = L·∂ₙ₊₁，W 的 Smith 标准形给出不变因子；生成元是 K·U⁻¹ 的列。
域系数(ℤ/p、ℚ)只计算维数，报告为 betti，torsion 为空。
"""

import logging
from dataclasses import dataclass
from math import gcd
from typing import List, Sequence, Tuple

import numpy as np

from closure_homology.core.exceptions import InputError, UnsupportedTheoryError
from closure_homology.models.schemas import HomologyEntry
from closure_homology.models.space import FiniteClosureSpace, SpacePair
from closure_homology.models.theory import INTEGERS, Coefficients, Ring, TheorySelector
from closure_homology.services.chains import (
    ChainComplex, ChainMap, CochainComplex, chain_complex, dualize, relative_complex,
)
from closure_homology.utils.snf import (
    SmithForm, as_int_matrix, int_dot, integer_kernel, integer_rank, invariant_factors, lattice_contains,
    nullspace_mod_p, rank_mod_p, same_lattice, smith_normal_form,
)

logger = logging.getLogger(__name__)


# ----------------------------------------------------------------------
# 有限生成阿贝尔群
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class HomologyGroup:
    """ℤ^betti ⊕ ℤ/d₁ ⊕ … ⊕ ℤ/d_k，d₁ | d₂ | … 且每个 dᵢ > 1"""
    betti: int = 0
    torsion: Tuple[int, ...] = ()

    @classmethod
    def from_cyclic(cls, orders: Sequence[int]) -> "HomologyGroup":
        """由循环因子的阶(0 表示 ℤ)规范化"""
        betti, torsion = invariant_factors(orders)
        return cls(betti=betti, torsion=tuple(torsion))

    @property
    def cyclic_orders(self) -> List[int]:
        return [0] * self.betti + list(self.torsion)

    @property
    def is_trivial(self) -> bool:
        return self.betti == 0 and not self.torsion

    def to_entry(self, n: int) -> HomologyEntry:
        return HomologyEntry(n=n, betti=self.betti, torsion=list(self.torsion))

    def __str__(self) -> str:
        parts = []
        if self.betti:
            parts.append("Z" if self.betti == 1 else f"Z^{self.betti}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " + ".join(parts) if parts else "0"


TRIVIAL = HomologyGroup()


def direct_sum(*groups: HomologyGroup) -> HomologyGroup:
    return HomologyGroup.from_cyclic([o for g in groups for o in g.cyclic_orders])


def _pairwise(a: HomologyGroup, b: HomologyGroup, rule) -> HomologyGroup:
    return HomologyGroup.from_cyclic([rule(x, y) for x in a.cyclic_orders for y in b.cyclic_orders])


def tensor(a: HomologyGroup, b: HomologyGroup) -> HomologyGroup:
    """ℤ⊗ℤ = ℤ，ℤ⊗ℤ/n = ℤ/n，ℤ/m⊗ℤ/n = ℤ/gcd(m,n)"""
    return _pairwise(a, b, lambda x, y: gcd(x, y) if x and y else (x or y))


def tor(a: HomologyGroup, b: HomologyGroup) -> HomologyGroup:
    """只有有限循环因子之间有非零 Tor"""
    return _pairwise(a, b, lambda x, y: gcd(x, y) if x and y else 1)


def hom(a: HomologyGroup, b: HomologyGroup) -> HomologyGroup:
    def rule(x, y):
        if x == 0:
            return y
        return gcd(x, y) if y else 1
    return _pairwise(a, b, rule)


def ext(a: HomologyGroup, b: HomologyGroup) -> HomologyGroup:
    def rule(x, y):
        if x == 0:
            return 1
        return gcd(x, y) if y else x
    return _pairwise(a, b, rule)


def coefficient_group(coefficients: Coefficients) -> HomologyGroup:
    if coefficients.ring is Ring.INTEGERS_MOD:
        return HomologyGroup(torsion=(coefficients.p,))
    if coefficients.ring is Ring.INTEGERS:
        return HomologyGroup(betti=1)
    raise UnsupportedTheoryError("ℚ 不是有限生成阿贝尔群，泛系数比较只支持 ℤ 与 ℤ/p")


def vector_dimension(group: HomologyGroup, p: int) -> int:
    """(ℤ/p)^k 的维数 k；群不是初等 p 群时报错"""
    if group.betti or any(d != p for d in group.torsion):
        raise ValueError(f"{group} 不是初等 {p} 群")
    return len(group.torsion)


# ----------------------------------------------------------------------
# 子商 ker(out) / im(in)
# ----------------------------------------------------------------------

@dataclass
class Subquotient:
    """
    整数子商的计算结果

    K: 环境空间中 ker(out) 的基(列)；L: 左逆；W: im(in) 在 K 坐标下的生成元；
    snf: W 的 Smith 标准形(带变换矩阵)；group: 对应的阿贝尔群。
    """
    K: np.ndarray
    L: np.ndarray
    W: np.ndarray
    snf: SmithForm
    group: HomologyGroup

    @property
    def cycle_rank(self) -> int:
        return self.K.shape[1]

    def coordinates(self, vectors: np.ndarray) -> np.ndarray:
        """核中向量 → 新基下的坐标 z = U·L·v"""
        return int_dot(self.snf.U, int_dot(self.L, vectors))

    def generators(self) -> List[Tuple[np.ndarray, int]]:
        """非平凡生成元 (链向量, 阶)，阶为 0 表示自由"""
        basis = int_dot(self.K, self.snf.U_inv)
        result = []
        rank = self.snf.rank
        for i, d in enumerate(self.snf.diagonal):
            if d > 1:
                result.append((basis[:, i], d))
        for i in range(rank, self.cycle_rank):
            result.append((basis[:, i], 0))
        return result

    def orders(self) -> List[int]:
        return [d for d in self.snf.diagonal if d > 1] + [0] * (self.cycle_rank - self.snf.rank)

    def project(self, vectors: np.ndarray) -> np.ndarray:
        """核中向量的同调类坐标(非平凡分量；挠分量按阶取模)"""
        z = self.coordinates(vectors)
        rank = self.snf.rank
        rows = []
        for i, d in enumerate(self.snf.diagonal):
            if d > 1:
                rows.append(np.array([int(x) % d for x in z[i]], dtype=object))
        for i in range(rank, self.cycle_rank):
            rows.append(np.array([int(x) for x in z[i]], dtype=object))
        if not rows:
            return np.zeros((0, z.shape[1]), dtype=object)
        return np.vstack(rows)


def subquotient(incoming: np.ndarray, outgoing: np.ndarray, size: int) -> Subquotient:
    """
    计算 ker(outgoing) / im(incoming)

    Args:
        incoming: 形状 (size, s) 的矩阵，其像落在 ker(outgoing) 中
        outgoing: 形状 (t, size) 的矩阵
        size: 环境自由模的秩
    """
    K, L = integer_kernel(as_int_matrix(outgoing, cols=size), cols=size)
    W = int_dot(L, as_int_matrix(incoming, rows=size))
    snf = smith_normal_form(W, with_inverses=True)
    betti = K.shape[1] - snf.rank
    group = HomologyGroup(betti=betti, torsion=tuple(snf.torsion))
    return Subquotient(K=K, L=L, W=W, snf=snf, group=group)


def _field_dimension(incoming: np.ndarray, outgoing: np.ndarray, size: int, coefficients: Coefficients) -> int:
    if coefficients.ring is Ring.INTEGERS_MOD:
        rank_out = rank_mod_p(outgoing, coefficients.p)
        rank_in = rank_mod_p(incoming, coefficients.p)
    else:
        rank_out = integer_rank(outgoing)
        rank_in = integer_rank(incoming)
    return size - rank_out - rank_in


def _check_range(n: int, top: int) -> None:
    if n < 0 or n > top:
        raise InputError(f"维数 {n} 超出已计算范围 0..{top}")


def homology_subquotient(complex_: ChainComplex, n: int) -> Subquotient:
    _check_range(n, complex_.max_valid)
    return subquotient(complex_.boundary(n + 1), complex_.boundary(n), complex_.rank(n))


def homology(complex_: ChainComplex, n: int, coefficients: Coefficients = INTEGERS) -> HomologyGroup:
    """
    Hₙ(C; G)

    Args:
        complex_: 链复形(增广时得到约化同调)
        n: 维数
        coefficients: 系数；域系数时返回维数
    """
    _check_range(n, complex_.max_valid)
    if coefficients.is_field:
        dim = _field_dimension(complex_.boundary(n + 1), complex_.boundary(n), complex_.rank(n), coefficients)
        return HomologyGroup(betti=dim)
    return homology_subquotient(complex_, n).group


def reduced_homology(complex_: ChainComplex, n: int, coefficients: Coefficients = INTEGERS) -> HomologyGroup:
    if not complex_.augmented:
        complex_ = complex_.augment()
    return homology(complex_, n, coefficients)


def homology_generators(complex_: ChainComplex, n: int) -> List[Tuple[np.ndarray, int]]:
    """Hₙ 一组基的链代表元：先挠生成元(带阶)，后自由生成元(阶记为 0)"""
    return homology_subquotient(complex_, n).generators()


def cohomology_subquotient(cochains: CochainComplex, n: int) -> Subquotient:
    _check_range(n, cochains.max_valid)
    return subquotient(cochains.coboundary(n - 1), cochains.coboundary(n), cochains.rank(n))


def cohomology(complex_: ChainComplex, n: int, coefficients: Coefficients = INTEGERS) -> HomologyGroup:
    """Hⁿ(C; G)，δⁿ 为 ∂ₙ₊₁ 的转置"""
    cochains = dualize(complex_, coefficients)
    _check_range(n, cochains.max_valid)
    if coefficients.is_field:
        dim = _field_dimension(cochains.coboundary(n - 1), cochains.coboundary(n), cochains.rank(n), coefficients)
        return HomologyGroup(betti=dim)
    return cohomology_subquotient(cochains, n).group


def reduced_cohomology(complex_: ChainComplex, n: int, coefficients: Coefficients = INTEGERS) -> HomologyGroup:
    if not complex_.augmented:
        complex_ = complex_.augment()
    return cohomology(complex_, n, coefficients)


def relative_cohomology(pair: SpacePair, selector: TheorySelector, coefficients: Coefficients,
                        max_dim: int) -> List[HomologyGroup]:
    """Hⁿ(X, A; G)，n = 0..max_dim"""
    complex_ = relative_complex(pair, selector, max_dim)
    return [cohomology(complex_, n, coefficients) for n in range(max_dim + 1)]


def homology_table(complex_: ChainComplex, coefficients: Coefficients = INTEGERS,
                   reduced: bool = False) -> List[HomologyGroup]:
    """0..max_valid 各维的同调"""
    compute = reduced_homology if reduced else homology
    return [compute(complex_, n, coefficients) for n in range(complex_.max_valid + 1)]


def space_homology(space: FiniteClosureSpace, selector: TheorySelector, max_dim: int,
                   coefficients: Coefficients = INTEGERS, reduced: bool = False,
                   normalize: bool = True) -> List[HomologyGroup]:
    """构造复形并计算 0..max_dim 的同调"""
    complex_ = chain_complex(space, selector, max_dim, normalize=normalize, augmented=reduced)
    groups = homology_table(complex_, coefficients)
    logger.info(f"{selector.label} 同调: {[str(g) for g in groups]}")
    return groups


# ----------------------------------------------------------------------
# 诱导同态与正合性
# ----------------------------------------------------------------------

def cycle_map(source: Subquotient, target: Subquotient, chain_matrix: np.ndarray) -> np.ndarray:
    """链级矩阵在闭链坐标下的表示 L_tgt·M·K_src"""
    return int_dot(target.L, int_dot(chain_matrix, source.K))


@dataclass
class HomologyMap:
    """Hₙ(C) → Hₙ(D)"""
    source: Subquotient
    target: Subquotient
    phi: np.ndarray  # 闭链坐标下的矩阵

    @property
    def matrix(self) -> np.ndarray:
        """在两端非平凡生成元下的矩阵；挠分量的行按阶取模"""
        generators = [g for g, _ in self.source.generators()]
        if not generators:
            return np.zeros((len(self.target.orders()), 0), dtype=object)
        coords = int_dot(self.source.L, np.column_stack(generators))
        return self.target.project(int_dot(self.target.K, int_dot(self.phi, coords)))

    def is_surjective(self) -> bool:
        """像与关系一起张成整个闭链坐标格"""
        k = self.target.cycle_rank
        if k == 0:
            return True
        combined = np.hstack([as_int_matrix(self.phi, rows=k), as_int_matrix(self.target.W, rows=k)])
        return same_lattice(combined, np.eye(k, dtype=np.int64))

    def is_isomorphism(self) -> bool:
        """
        两端群同构且映射满射

        有限生成阿贝尔群是 Hopf 群，同构的群之间的满同态必为同构。
        """
        return self.source.group == self.target.group and self.is_surjective()

    def is_zero(self) -> bool:
        return lattice_in(self.phi, self.target)

    def equals(self, other: "HomologyMap") -> bool:
        return lattice_in(np.asarray(self.phi, dtype=object) - np.asarray(other.phi, dtype=object), self.target)


def lattice_in(vectors: np.ndarray, target: Subquotient) -> bool:
    """闭链坐标下的向量是否都是边界"""
    return lattice_contains(as_int_matrix(target.W, rows=target.cycle_rank),
                            as_int_matrix(vectors, rows=target.cycle_rank))


def induced_homology_map(chain_map: ChainMap, n: int) -> HomologyMap:
    """链映射在 Hₙ 上诱导的同态"""
    source = homology_subquotient(chain_map.source, n)
    target = homology_subquotient(chain_map.target, n)
    return HomologyMap(source, target, cycle_map(source, target, chain_map.matrix(n)))


def is_exact_at(phi_in: np.ndarray, middle: Subquotient, phi_out: np.ndarray, right: Subquotient) -> bool:
    """
    A → B → C 在 B 处正合：im α + R_B 与 {y : βy ∈ R_C} 是同一个格

    Args:
        phi_in: α 在闭链坐标下的矩阵 (k_B × k_A)
        middle: B 的子商
        phi_out: β 在闭链坐标下的矩阵 (k_C × k_B)
        right: C 的子商
    """
    k = middle.cycle_rank
    if k == 0:
        return True
    image = np.hstack([as_int_matrix(phi_in, rows=k), as_int_matrix(middle.W, rows=k)])
    out = as_int_matrix(phi_out, rows=right.cycle_rank, cols=k)
    relations = as_int_matrix(right.W, rows=right.cycle_rank)
    stacked = np.hstack([out, relations]) if right.cycle_rank else np.zeros((0, k + relations.shape[1]), dtype=np.int64)
    kernel, _ = integer_kernel(stacked, cols=k + relations.shape[1])
    preimage = kernel[:k, :] if kernel.size else np.zeros((k, 0), dtype=np.int64)
    return same_lattice(image, preimage)


# ----------------------------------------------------------------------
# 杯积
# ----------------------------------------------------------------------

def cup_product(complex_: ChainComplex, a: Sequence[int], p: int, b: Sequence[int], q: int,
                coefficients: Coefficients = INTEGERS) -> np.ndarray:
    """
    (a⌣b)(σ) = a(σ|[0..p])·b(σ|[p..p+q])

    Args:
        complex_: 单纯链复形(退化商或 Moore)，基标签为顶点元组
        a: p 维上链，按 Cᵖ 的基给出取值
        b: q 维上链

    Returns:
        p+q 维上链；ℤ/p 系数时按模约化
    """
    if complex_.selector is None or not complex_.selector.is_simplicial:
        raise UnsupportedTheoryError("杯积只对单纯理论实现")
    n = p + q
    if n > complex_.top:
        raise InputError(f"杯积维数 {n} 超出复形范围 {complex_.top}")
    a = list(a)
    b = list(b)
    if len(a) != complex_.rank(p) or len(b) != complex_.rank(q):
        raise InputError("上链长度与基的秩不一致")
    front_index = complex_.index(p)
    back_index = complex_.index(q)
    result = np.zeros(complex_.rank(n), dtype=object)
    for k, s in enumerate(complex_.bases[n]):
        front = front_index.get(s[:p + 1])
        back = back_index.get(s[p:])
        if front is not None and back is not None:
            result[k] = int(a[front]) * int(b[back])
    if coefficients.ring is Ring.INTEGERS_MOD:
        result = result % coefficients.p
    return result


def coboundary_of(complex_: ChainComplex, cochain: Sequence[int], n: int,
                  coefficients: Coefficients = INTEGERS) -> np.ndarray:
    """δ: Cⁿ → Cⁿ⁺¹，(δa)(σ) = a(∂σ)"""
    vector = np.array([int(x) for x in cochain], dtype=object).reshape(-1, 1)
    result = int_dot(dualize(complex_).coboundary(n), vector).reshape(-1)
    if coefficients.ring is Ring.INTEGERS_MOD:
        result = np.array([int(x) % coefficients.p for x in result], dtype=object)
    return result


def cocycle_basis_mod_p(complex_: ChainComplex, n: int, p: int) -> np.ndarray:
    """𝔽_p 上 n 维上闭链空间的基(按列)"""
    return nullspace_mod_p(dualize(complex_).coboundary(n), p, cols=complex_.rank(n))


def is_coboundary_mod_p(complex_: ChainComplex, cochain: Sequence[int], n: int, p: int) -> bool:
    """上链是否属于 im δⁿ⁻¹ (在 𝔽_p 上)"""
    delta = dualize(complex_).coboundary(n - 1)
    vector = np.array([int(x) % p for x in cochain], dtype=np.int64).reshape(-1, 1)
    if delta.size == 0:
        return not np.any(vector)
    return rank_mod_p(np.hstack([delta, vector]), p) == rank_mod_p(delta, p)
