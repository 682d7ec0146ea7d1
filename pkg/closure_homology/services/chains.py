"""
链复形与链映射

复合形由神经表构造：Moore 复形(全部元素为基)或退化商复形(非退化元素为基，
落在退化元素上的边界项被丢弃)。相对复形、子复形、覆盖子复形都是按像集筛选基得到的，
因而它们的基标签与全复形一致，包含与投影就是按标签选取。
"""

import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, Hashable, Iterable, List, Optional, Tuple

import numpy as np

from closure_homology.core.exceptions import InputError
from closure_homology.models.space import Cover, FiniteClosureSpace, SpaceMap, SpacePair
from closure_homology.models.theory import INTEGERS, Coefficients, Flavor, Ring, TheorySelector
from closure_homology.services import nerves, spaces
from closure_homology.utils.snf import as_int_matrix, int_dot, integer_kernel

logger = logging.getLogger(__name__)

Label = Hashable


@dataclass
class ChainComplex:
    """
    有限生成自由链复形

    bases[n] 是第 n 维的有序基标签(0 ≤ n ≤ top)，boundaries[n] 是 ∂ₙ: Cₙ → Cₙ₋₁ 的矩阵，
    行对应 n−1 维基，列对应 n 维基。增广复形在 −1 维有一个生成元，∂₀ = ε。
    complete 为假时复形在 top 处截断，只有 n < top 的同调是可信的。
    """
    bases: Dict[int, List[Label]]
    boundaries: Dict[int, np.ndarray]
    top: int
    complete: bool = False
    augmented: bool = False
    space: Optional[FiniteClosureSpace] = None
    selector: Optional[TheorySelector] = None
    normalized: bool = True
    _index: Dict[int, Dict[Label, int]] = field(default_factory=dict, repr=False)

    @property
    def max_valid(self) -> int:
        return self.top if self.complete else self.top - 1

    def rank(self, n: int) -> int:
        if n == -1:
            return 1 if self.augmented else 0
        if 0 <= n <= self.top:
            return len(self.bases.get(n, []))
        return 0

    def ranks(self) -> List[int]:
        return [self.rank(n) for n in range(self.top + 1)]

    def boundary(self, n: int) -> np.ndarray:
        """∂ₙ，超出存储范围时返回形状正确的零矩阵"""
        if n == 0 and self.augmented:
            return np.ones((1, self.rank(0)), dtype=np.int64)
        if n in self.boundaries:
            return self.boundaries[n]
        return np.zeros((self.rank(n - 1), self.rank(n)), dtype=np.int64)

    def index(self, n: int) -> Dict[Label, int]:
        if n not in self._index:
            self._index[n] = {label: k for k, label in enumerate(self.bases.get(n, []))}
        return self._index[n]

    def is_complex(self) -> bool:
        """∂ₙ₋₁∘∂ₙ = 0"""
        lowest = 0 if self.augmented else 1
        for n in range(lowest + 1, self.top + 1):
            product = int_dot(self.boundary(n - 1), self.boundary(n))
            if np.any(product != 0):
                return False
        return True

    def augment(self) -> "ChainComplex":
        return ChainComplex(bases=self.bases, boundaries=self.boundaries, top=self.top, complete=self.complete,
                            augmented=True, space=self.space, selector=self.selector, normalized=self.normalized)

    @classmethod
    def from_matrices(cls, ranks: List[int], boundaries: Dict[int, Iterable]) -> "ChainComplex":
        """由秩与边界矩阵直接构造完整(未截断)的复形，基标签为 (n, k)"""
        bases = {n: [(n, k) for k in range(r)] for n, r in enumerate(ranks)}
        mats = {}
        for n in range(1, len(ranks)):
            raw = boundaries.get(n)
            mats[n] = (as_int_matrix(raw, rows=ranks[n - 1], cols=ranks[n]) if raw is not None
                       else np.zeros((ranks[n - 1], ranks[n]), dtype=np.int64))
        return cls(bases=bases, boundaries=mats, top=len(ranks) - 1, complete=True)


@dataclass
class ChainMap:
    """链映射 F: C → D，matrices[n] 的形状为 (rank Dₙ, rank Cₙ)"""
    source: ChainComplex
    target: ChainComplex
    matrices: Dict[int, np.ndarray]

    def matrix(self, n: int) -> np.ndarray:
        if n in self.matrices:
            return self.matrices[n]
        return np.zeros((self.target.rank(n), self.source.rank(n)), dtype=np.int64)

    def is_chain_map(self) -> bool:
        """∂ᴰ∘F = F∘∂ᶜ 在所有维数上成立"""
        top = min(self.source.top, self.target.top)
        for n in range(1, top + 1):
            left = int_dot(self.target.boundary(n), self.matrix(n))
            right = int_dot(self.matrix(n - 1), self.source.boundary(n))
            if np.any(left != right):
                return False
        return True

    def compose(self, other: "ChainMap") -> "ChainMap":
        """self∘other"""
        top = min(self.source.top, other.source.top)
        return ChainMap(other.source, self.target,
                        {n: int_dot(self.matrix(n), other.matrix(n)) for n in range(top + 1)})


# ----------------------------------------------------------------------
# 由神经构造复形
# ----------------------------------------------------------------------

def _faces(cell: nerves.Cell, simplicial: bool) -> List[Tuple[nerves.Cell, int]]:
    if simplicial:
        n = len(cell) - 1
        return [(cell[:i] + cell[i + 1:], -1 if i % 2 else 1) for i in range(n + 1)]
    n = nerves.cube_dim(cell)
    terms = []
    for i in range(1, n + 1):
        sign = -1 if i % 2 else 1
        terms.append((nerves.cube_face(cell, i, 0), sign))
        terms.append((nerves.cube_face(cell, i, 1), -sign))
    return terms


def _is_degenerate(cell: nerves.Cell, simplicial: bool) -> bool:
    return nerves.is_degenerate_simplex(cell) if simplicial else nerves.is_degenerate(cell)


def _assemble(bases: Dict[int, List[Label]], top: int, simplicial: bool) -> Dict[int, np.ndarray]:
    boundaries = {}
    for n in range(1, top + 1):
        rows = {label: k for k, label in enumerate(bases[n - 1])}
        matrix = np.zeros((len(bases[n - 1]), len(bases[n])), dtype=np.int64)
        for col, cell in enumerate(bases[n]):
            for face, sign in _faces(cell, simplicial):
                row = rows.get(face)
                if row is not None:
                    matrix[row, col] += sign
        boundaries[n] = matrix
    return boundaries


def nerve_complex(nerve: nerves.Nerve, max_dim: int, normalize: bool = True,
                  keep: Optional[Callable[[int], bool]] = None, augmented: bool = False) -> ChainComplex:
    """
    由神经表构造链复形，维数到 max_dim + 1

    Args:
        nerve: 神经表
        max_dim: 需要可信同调的最高维数
        normalize: 为真时取退化商复形
        keep: 按像集位向量筛选元素；None 表示全部保留
        augmented: 是否增广
    """
    if max_dim < 0:
        raise InputError(f"max_dim 必须非负，得到 {max_dim}")
    simplicial = nerve.is_simplicial
    top = max_dim + 1
    bases = {}
    for n in range(top + 1):
        cells = nerve.cells(n)
        if normalize:
            cells = [c for c in cells if not _is_degenerate(c, simplicial)]
        if keep is not None:
            cells = [c for c in cells if keep(nerves.image(c))]
        bases[n] = cells
    complex_ = ChainComplex(bases=bases, boundaries=_assemble(bases, top, simplicial), top=top,
                            augmented=augmented, space=nerve.space, selector=nerve.selector,
                            normalized=normalize)
    logger.debug(f"{nerve.selector.label} 链复形秩: {complex_.ranks()}")
    return complex_


def chain_complex(space: FiniteClosureSpace, selector: TheorySelector, max_dim: int,
                  normalize: bool = True, augmented: bool = False, cap: Optional[int] = None,
                  nerve: Optional[nerves.Nerve] = None) -> ChainComplex:
    """按选择器的类型构造单纯或立方链复形"""
    nerve = nerve or nerves.Nerve(space, selector, cap)
    return nerve_complex(nerve, max_dim, normalize=normalize, augmented=augmented)


def simplicial_chain_complex(space: FiniteClosureSpace, selector: TheorySelector, max_dim: int,
                             normalize: bool = True, augmented: bool = False,
                             cap: Optional[int] = None) -> ChainComplex:
    if not selector.is_simplicial:
        raise InputError("单纯链复形需要单纯理论")
    return chain_complex(space, selector, max_dim, normalize, augmented, cap)


def cubical_chain_complex(space: FiniteClosureSpace, selector: TheorySelector, max_dim: int,
                          normalize: bool = True, augmented: bool = False,
                          cap: Optional[int] = None) -> ChainComplex:
    """立方链复形；normalize=False 给出未正规化的 Moore 复形(仅作参照)"""
    if selector.is_simplicial:
        raise InputError("立方链复形需要立方理论")
    return chain_complex(space, selector, max_dim, normalize, augmented, cap)


def subspace_complex(pair: SpacePair, selector: TheorySelector, max_dim: int, normalize: bool = True,
                     nerve: Optional[nerves.Nerve] = None) -> ChainComplex:
    """C(A) 作为 C(X) 的子复形：像落在 A 中的元素"""
    nerve = nerve or nerves.Nerve(pair.ambient, selector)
    mask = pair.mask
    return nerve_complex(nerve, max_dim, normalize, keep=lambda m: m & ~mask == 0)


def relative_complex(pair: SpacePair, selector: TheorySelector, max_dim: int, normalize: bool = True,
                     nerve: Optional[nerves.Nerve] = None) -> ChainComplex:
    """C(X, A)：基为不落在 A 中的元素，落入 A 的边界项被丢弃"""
    nerve = nerve or nerves.Nerve(pair.ambient, selector)
    mask = pair.mask
    return nerve_complex(nerve, max_dim, normalize, keep=lambda m: m & ~mask != 0)


@dataclass
class CoverSubcomplex:
    complex: ChainComplex
    equal: bool
    escaping: Dict[int, List[nerves.Cell]]


def interior_cover_subcomplex(space: FiniteClosureSpace, cover: Cover, selector: TheorySelector,
                              max_dim: int, normalize: bool = True,
                              nerve: Optional[nerves.Nerve] = None) -> CoverSubcomplex:
    """
    由像落在某个覆盖部分中的元素生成的子复形

    Returns:
        子复形、与全复形是否相等，以及每维不落在任何部分中的元素
    """
    if not spaces.is_interior_cover(cover):
        raise InputError(f"不是内部覆盖: {cover!r}")
    nerve = nerve or nerves.Nerve(space, selector)
    masks = cover.masks

    def inside(m: int) -> bool:
        return any(m & ~part == 0 for part in masks)

    full = nerve_complex(nerve, max_dim, normalize)
    sub = nerve_complex(nerve, max_dim, normalize, keep=inside)
    escaping = {}
    for n in range(full.top + 1):
        outside = [c for c in full.bases[n] if not inside(nerves.image(c))]
        if outside:
            escaping[n] = outside
    return CoverSubcomplex(complex=sub, equal=not escaping, escaping=escaping)


# ----------------------------------------------------------------------
# 正规化复形 NA
# ----------------------------------------------------------------------

def _face_operator_matrix(moore: ChainComplex, n: int, face: Callable[[nerves.Cell], nerves.Cell]) -> np.ndarray:
    rows = moore.index(n - 1)
    matrix = np.zeros((moore.rank(n - 1), moore.rank(n)), dtype=np.int64)
    for col, cell in enumerate(moore.bases[n]):
        matrix[rows[face(cell)], col] = 1
    return matrix


def normalized_complex(space: FiniteClosureSpace, selector: TheorySelector, max_dim: int,
                       nerve: Optional[nerves.Nerve] = None) -> ChainComplex:
    """
    正规化复形 NA：单纯理论取 ∩_{i<n} ker dᵢ，立方理论取 ∩ᵢ ker B_i

    以 Moore 复形中的整数核格为基；边界是 Moore 边界的限制，表示为核格坐标。
    基标签为 ("NA", n, k)，第 k 个格基向量。
    """
    nerve = nerve or nerves.Nerve(space, selector)
    moore = nerve_complex(nerve, max_dim, normalize=False)
    simplicial = selector.is_simplicial
    lattices = {}
    for n in range(moore.top + 1):
        if n == 0:
            size = moore.rank(0)
            lattices[0] = (np.eye(size, dtype=np.int64), np.eye(size, dtype=np.int64))
            continue
        if simplicial:
            ops = [lambda s, i=i: nerves.simplex_face(s, i) for i in range(n)]
        else:
            ops = [lambda q, i=i: nerves.cube_face(q, i, 1) for i in range(1, n + 1)]
        stacked = np.vstack([_face_operator_matrix(moore, n, op) for op in ops])
        lattices[n] = integer_kernel(stacked, cols=moore.rank(n))

    bases = {n: [("NA", n, k) for k in range(lattices[n][0].shape[1])] for n in lattices}
    boundaries = {}
    for n in range(1, moore.top + 1):
        K = lattices[n][0]
        left = lattices[n - 1][1]
        boundaries[n] = int_dot(left, int_dot(moore.boundary(n), K))
    return ChainComplex(bases=bases, boundaries=boundaries, top=moore.top, space=space,
                        selector=selector, normalized=True)


# ----------------------------------------------------------------------
# 代数构造
# ----------------------------------------------------------------------

def direct_sum(c: ChainComplex, d: ChainComplex) -> ChainComplex:
    """C ⊕ D，基标签为 (0, a) 与 (1, b)"""
    top = min(c.top, d.top)
    bases = {n: [(0, a) for a in c.bases.get(n, [])] + [(1, b) for b in d.bases.get(n, [])]
             for n in range(top + 1)}
    boundaries = {}
    for n in range(1, top + 1):
        bc, bd = c.boundary(n), d.boundary(n)
        matrix = np.zeros((bc.shape[0] + bd.shape[0], bc.shape[1] + bd.shape[1]), dtype=bc.dtype)
        matrix[:bc.shape[0], :bc.shape[1]] = bc
        matrix[bc.shape[0]:, bc.shape[1]:] = bd
        boundaries[n] = matrix
    return ChainComplex(bases=bases, boundaries=boundaries, top=top, complete=c.complete and d.complete)


def tensor_complex(c: ChainComplex, d: ChainComplex) -> ChainComplex:
    """
    张量积复形，∂(a⊗b) = ∂a⊗b + (−1)^i a⊗∂b

    两个截断复形的张量积在 min(top) 处截断；两者都完整时结果也完整。
    """
    complete = c.complete and d.complete
    top = c.top + d.top if complete else min(c.top, d.top)

    def blocks(n: int) -> List[Tuple[int, int, int]]:
        """(i, 起始偏移, 块大小)"""
        result, offset = [], 0
        for i in range(n + 1):
            size = c.rank(i) * d.rank(n - i)
            result.append((i, offset, size))
            offset += size
        return result

    bases = {n: [(a, b) for i in range(n + 1) for a in c.bases.get(i, []) for b in d.bases.get(n - i, [])]
             for n in range(top + 1)}
    boundaries = {}
    for n in range(1, top + 1):
        lower = {i: (offset, size) for i, offset, size in blocks(n - 1)}
        matrix = np.zeros((len(bases[n - 1]), len(bases[n])), dtype=np.int64)
        for i, col, size in blocks(n):
            if size == 0:
                continue
            j = n - i
            if i >= 1:
                row, _ = lower[i - 1]
                part = np.kron(c.boundary(i), np.eye(d.rank(j), dtype=np.int64))
                matrix[row:row + part.shape[0], col:col + size] += part
            if j >= 1:
                row, _ = lower[i]
                sign = -1 if i % 2 else 1
                part = sign * np.kron(np.eye(c.rank(i), dtype=np.int64), d.boundary(j))
                matrix[row:row + part.shape[0], col:col + size] += part
        boundaries[n] = matrix
    return ChainComplex(bases=bases, boundaries=boundaries, top=top, complete=complete)


@dataclass
class CochainComplex:
    """Hom(C, G)：δⁿ = ∂ₙ₊₁ 的转置，系数为 ℤ/p 时矩阵按 p 取模"""
    chains: ChainComplex
    coefficients: Coefficients

    @property
    def max_valid(self) -> int:
        return self.chains.max_valid

    def rank(self, n: int) -> int:
        return self.chains.rank(n)

    def coboundary(self, n: int) -> np.ndarray:
        """δⁿ: Cⁿ → Cⁿ⁺¹"""
        matrix = self.chains.boundary(n + 1).T
        if self.coefficients.ring is Ring.INTEGERS_MOD:
            matrix = matrix % self.coefficients.p
        return matrix


def dualize(complex_: ChainComplex, coefficients: Coefficients = INTEGERS) -> CochainComplex:
    return CochainComplex(chains=complex_, coefficients=coefficients)


# ----------------------------------------------------------------------
# 链映射
# ----------------------------------------------------------------------

def selection_map(source: ChainComplex, target: ChainComplex, sign: int = 1) -> ChainMap:
    """按标签选取：源中标签若在目标中出现则映为 ±1 倍该基元素，否则为 0"""
    top = min(source.top, target.top)
    matrices = {}
    for n in range(top + 1):
        index = target.index(n)
        matrix = np.zeros((target.rank(n), source.rank(n)), dtype=np.int64)
        for col, label in enumerate(source.bases.get(n, [])):
            row = index.get(label)
            if row is not None:
                matrix[row, col] = sign
        matrices[n] = matrix
    return ChainMap(source, target, matrices)


def induced_chain_map(smap: SpaceMap, source: ChainComplex, target: ChainComplex,
                      check: bool = True) -> ChainMap:
    """
    f_#(σ) = f∘σ；在退化商复形中像为退化元素时记为 0

    Args:
        smap: 连续映射 X → Y
        source: X 的链复形(基标签为神经元素)
        target: Y 的链复形
    """
    if check and not spaces.is_continuous(smap):
        raise InputError("诱导链映射要求映射连续")
    top = min(source.top, target.top)
    matrices = {}
    for n in range(top + 1):
        index = target.index(n)
        matrix = np.zeros((target.rank(n), source.rank(n)), dtype=np.int64)
        for col, cell in enumerate(source.bases.get(n, [])):
            row = index.get(nerves.postcompose(cell, smap, check=False))
            if row is not None:
                matrix[row, col] += 1
        matrices[n] = matrix
    return ChainMap(source, target, matrices)


def map_complexes(smap: SpaceMap, selector: TheorySelector, max_dim: int,
                  normalize: bool = True) -> ChainMap:
    """构造两端复形并返回诱导链映射"""
    source = chain_complex(smap.source, selector, max_dim, normalize)
    target = chain_complex(smap.target, selector, max_dim, normalize)
    return induced_chain_map(smap, source, target)


def comparison_chain_map(space: FiniteClosureSpace, selector: TheorySelector, max_dim: int) -> ChainMap:
    """
    单纯 Moore 复形到 (J,×) 立方退化商复形的比较链映射

    σ ↦ fσ；fσ 退化时记为 0。退化单纯形 s_jσ 的像是连接立方体而非退化立方体，
    所以源端取 Moore 复形。
    """
    simplicial = TheorySelector(interval=selector.interval, flavor=Flavor.SIMPLICIAL)
    cubical = TheorySelector(interval=selector.interval, flavor=Flavor.CUBICAL)
    source = chain_complex(space, simplicial, max_dim, normalize=False)
    target = chain_complex(space, cubical, max_dim, normalize=True)
    top = min(source.top, target.top)
    matrices = {}
    for n in range(top + 1):
        index = target.index(n)
        matrix = np.zeros((target.rank(n), source.rank(n)), dtype=np.int64)
        for col, s in enumerate(source.bases[n]):
            row = index.get(nerves.comparison_map(s))
            if row is not None:
                matrix[row, col] = 1
        matrices[n] = matrix
    return ChainMap(source, target, matrices)
