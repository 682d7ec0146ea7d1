"""
单纯神经 𝒮ᴶ(X) 与立方神经 𝒞^{(J,⊗)}(X)

单纯形是顶点下标的元组 (σ(0),…,σ(n))；立方体是长度 2ⁿ 的元组，第 c 个分量是角点
a = (a₁,…,aₙ) 的像，其中 c = Σ aᵢ·2^{i−1}(a₁ 为最低位)。两者都用目标空间的点下标表示，
元组本身可哈希，直接作为链复形的基标签。
"""

import itertools
import logging
from typing import Dict, List, Optional, Sequence, Tuple

from closure_homology.core.config import settings
from closure_homology.core.exceptions import InputError, ResourceLimitError
from closure_homology.models.space import FiniteClosureSpace, SpaceMap, iter_bits
from closure_homology.models.theory import Flavor, Interval, ProductKind, TheorySelector
from closure_homology.services import spaces

logger = logging.getLogger(__name__)

Simplex = Tuple[int, ...]
Cube = Tuple[int, ...]
Cell = Tuple[int, ...]


def interval_space(interval: Interval) -> FiniteClosureSpace:
    return spaces.J1 if interval is Interval.J1 else spaces.JPLUS


def model_simplex(n: int, interval: Interval) -> FiniteClosureSpace:
    """Δⁿ_J：J₁ 取 J_{n,⊤}，J₊ 取 J_{n,≤}"""
    return spaces.standard_space("J_top" if interval is Interval.J1 else "J_le", n)


def corner_tuple(corner: int, n: int) -> Tuple[int, ...]:
    """角点下标 → (a₁,…,aₙ)"""
    return tuple((corner >> i) & 1 for i in range(n))


def model_cube(n: int, interval: Interval, product: ProductKind) -> Tuple[FiniteClosureSpace, List[int]]:
    """
    J^{⊗n} 及角点下标到其点下标的对应

    Returns:
        (空间, position)，position[c] 是角点 c 在幂空间点序中的下标
    """
    cube = spaces.power(interval_space(interval), n, product)
    return cube, [cube.index(corner_tuple(c, n)) for c in range(2 ** n)]


def _corner_closures(n: int, interval: Interval, product: ProductKind) -> List[int]:
    """按角点下标重排的 J^{⊗n} 单点闭包位向量"""
    cube, position = model_cube(n, interval, product)
    back = {p: c for c, p in enumerate(position)}
    masks = []
    for c in range(2 ** n):
        mask = 0
        for p in iter_bits(cube.closure_masks[position[c]]):
            mask |= 1 << back[p]
        masks.append(mask)
    return masks


# ----------------------------------------------------------------------
# 单纯形运算
# ----------------------------------------------------------------------

def simplex_dim(s: Simplex) -> int:
    return len(s) - 1


def simplex_face(s: Simplex, i: int) -> Simplex:
    """dᵢ：删去第 i 个顶点"""
    n = len(s) - 1
    if n < 1 or not 0 <= i <= n:
        raise InputError(f"面算子下标越界: d_{i} 作用于 {n} 维单纯形")
    return s[:i] + s[i + 1:]


def simplex_degeneracy(s: Simplex, i: int) -> Simplex:
    """sᵢ：重复第 i 个顶点"""
    n = len(s) - 1
    if not 0 <= i <= n:
        raise InputError(f"退化算子下标越界: s_{i} 作用于 {n} 维单纯形")
    return s[:i + 1] + s[i:]


def is_degenerate_simplex(s: Simplex) -> bool:
    return any(s[k] == s[k + 1] for k in range(len(s) - 1))


def simplex_identity(n: int, interval: Interval) -> Simplex:
    """Δⁿ_J 上的恒等 n 单纯形"""
    return tuple(range(n + 1))


# ----------------------------------------------------------------------
# 立方体运算
# ----------------------------------------------------------------------

def cube_dim(q: Cube) -> int:
    return len(q).bit_length() - 1


def _check_index(i: int, n: int, what: str) -> None:
    if not 1 <= i <= n:
        raise InputError(f"{what}下标越界: i={i}, n={n}")


def cube_face(q: Cube, i: int, eps: int) -> Cube:
    """Aᵢ (eps=0) / Bᵢ (eps=1)：把第 i 个坐标固定为 eps"""
    n = cube_dim(q)
    _check_index(i, n, "面算子")
    low_bits = (1 << (i - 1)) - 1
    result = []
    for c in range(2 ** (n - 1)):
        corner = (c & low_bits) | (eps << (i - 1)) | ((c >> (i - 1)) << i)
        result.append(q[corner])
    return tuple(result)


def cube_degeneracy(q: Cube, i: int) -> Cube:
    """在第 i 个位置插入一个被忽略的坐标，1 ≤ i ≤ n+1"""
    n = cube_dim(q)
    _check_index(i, n + 1, "退化算子")
    low_bits = (1 << (i - 1)) - 1
    return tuple(q[(c & low_bits) | ((c >> i) << (i - 1))] for c in range(2 ** (n + 1)))


def is_degenerate(q: Cube) -> bool:
    """存在 i 使 Aᵢq = Bᵢq"""
    n = cube_dim(q)
    return any(cube_face(q, i, 0) == cube_face(q, i, 1) for i in range(1, n + 1))


def cube_connection(q: Cube, i: int, eps: int) -> Cube:
    """
    连接 Γᵢᵉ：Γᵢᵉq(a₁,…,a_{n+1}) = q(a₁,…,m_ε(aᵢ,a_{i+1}),…)

    m¹ = min，m⁰ = max。
    """
    n = cube_dim(q)
    _check_index(i, n, "连接")
    low_bits = (1 << (i - 1)) - 1
    result = []
    for c in range(2 ** (n + 1)):
        a, b = (c >> (i - 1)) & 1, (c >> i) & 1
        merged = min(a, b) if eps == 1 else max(a, b)
        corner = (c & low_bits) | (merged << (i - 1)) | ((c >> (i + 1)) << i)
        result.append(q[corner])
    return tuple(result)


def cube_identity(n: int, interval: Interval, product: ProductKind) -> Cube:
    """J^{⊗n} 上的恒等 n 立方体"""
    _, position = model_cube(n, interval, product)
    return tuple(position)


def comparison_map(s: Simplex) -> Cube:
    """
    单纯形到立方体的比较映射：(fσ)(a) = σ(ℓ(a))，ℓ(a) 为 a₁,a₂,… 开头连续 1 的个数

    满足 f dᵢ = B_{i+1} f (i < n) 与 f dₙ = Aₙ f。
    """
    n = len(s) - 1
    result = []
    for c in range(2 ** n):
        lead = 0
        while lead < n and (c >> lead) & 1:
            lead += 1
        result.append(s[lead])
    return tuple(result)


# ----------------------------------------------------------------------
# 通用运算
# ----------------------------------------------------------------------

def postcompose(cell: Cell, smap: SpaceMap, check: bool = True) -> Cell:
    """f_#(σ) = f∘σ"""
    if check and not spaces.is_continuous(smap):
        raise InputError("后复合要求映射连续")
    return tuple(smap.images[v] for v in cell)


def image(cell: Cell) -> int:
    """像集的位向量"""
    mask = 0
    for v in cell:
        mask |= 1 << v
    return mask


def format_cell(space: FiniteClosureSpace, cell: Cell) -> str:
    return "[" + ", ".join(spaces.format_point(space.points[v]) for v in cell) + "]"


def is_continuous_simplex(space: FiniteClosureSpace, s: Simplex, interval: Interval) -> bool:
    """按定义检查 Δⁿ_J → X 的连续性(测试用原始判据)"""
    model = model_simplex(len(s) - 1, interval)
    return spaces.is_continuous(SpaceMap.from_indices(model, space, s))


def is_continuous_cube(space: FiniteClosureSpace, q: Cube, interval: Interval, product: ProductKind) -> bool:
    """按定义检查 J^{⊗n} → X 的连续性"""
    n = cube_dim(q)
    model, position = model_cube(n, interval, product)
    images = [0] * len(q)
    for c, p in enumerate(position):
        images[p] = q[c]
    return spaces.is_continuous(SpaceMap.from_indices(model, space, images))


# ----------------------------------------------------------------------
# 枚举
# ----------------------------------------------------------------------

class Nerve:
    """
    空间在给定理论下的神经，按维数缓存

    n 维元素由 n−1 维元素扩展得到：单纯形在末尾追加一个顶点，
    立方体由下底面 Aₙq 与逐角点回溯填充的上底面组成。
    """

    def __init__(self, space: FiniteClosureSpace, selector: TheorySelector,
                 cap: Optional[int] = None, max_dim: Optional[int] = None):
        self.space = space
        self.selector = selector
        self.cap = cap if cap is not None else settings.MAX_CELLS
        self.max_dim = max_dim if max_dim is not None else settings.MAX_DIM
        self._cells: Dict[int, List[Cell]] = {}
        self._index: Dict[int, Dict[Cell, int]] = {}
        # 单纯形扩展时，每个单纯形可追加的顶点位向量
        self._frontier: Dict[int, List[int]] = {}
        if selector.interval is Interval.J1:
            # 双向相邻
            self._allowed = [c & nb for c, nb in zip(space.closure_masks, space.neighborhood_masks)]
        else:
            self._allowed = list(space.closure_masks)

    @property
    def is_simplicial(self) -> bool:
        return self.selector.flavor is Flavor.SIMPLICIAL

    def cells(self, n: int) -> List[Cell]:
        """n 维元素的字典序列表"""
        if n < 0:
            return []
        if n > self.max_dim:
            raise ResourceLimitError(f"维数 {n} 超过上限 {self.max_dim}")
        if n not in self._cells:
            if self.is_simplicial:
                self._cells[n] = self._simplices(n)
            else:
                self._cells[n] = self._cubes(n)
            logger.debug(f"{self.selector.label} 第 {n} 维共 {len(self._cells[n])} 个元素")
        return self._cells[n]

    def index(self, n: int) -> Dict[Cell, int]:
        if n not in self._index:
            self._index[n] = {cell: k for k, cell in enumerate(self.cells(n))}
        return self._index[n]

    def _check_cap(self, count: int, n: int) -> None:
        if count > self.cap:
            raise ResourceLimitError(f"第 {n} 维元素数超过上限 {self.cap}")

    def _simplices(self, n: int) -> List[Simplex]:
        if n == 0:
            self._frontier[0] = list(self._allowed)
            return [(v,) for v in range(len(self.space))]
        previous = self.cells(n - 1)
        result: List[Simplex] = []
        frontier = []
        for s, candidates in zip(previous, self._frontier[n - 1]):
            for v in iter_bits(candidates):
                result.append(s + (v,))
                frontier.append(candidates & self._allowed[v])
            self._check_cap(len(result), n)
        self._frontier[n] = frontier
        return result

    def _cubes(self, n: int) -> List[Cube]:
        if n == 0:
            return [(v,) for v in range(len(self.space))]
        closures = _corner_closures(n, self.selector.interval, self.selector.product)
        half = 2 ** (n - 1)
        # 对每个上底面角点 a，列出与之相关的更早角点 b 及约束方向
        constraints: List[List[Tuple[int, bool, bool]]] = []
        for a in range(half, 2 * half):
            related = []
            for b in range(a):
                b_in_ca = bool((closures[a] >> b) & 1)
                a_in_cb = bool((closures[b] >> a) & 1)
                if b_in_ca or a_in_cb:
                    related.append((b, b_in_ca, a_in_cb))
            constraints.append(related)

        space = self.space
        full = space.full_mask
        result: List[Cube] = []
        assignment = [0] * (2 * half)

        def fill(k: int) -> None:
            if k == 2 * half:
                result.append(tuple(assignment))
                self._check_cap(len(result), n)
                return
            candidates = full
            for b, b_in_ca, a_in_cb in constraints[k - half]:
                image_b = assignment[b]
                if b_in_ca:
                    candidates &= space.neighborhood_masks[image_b]
                if a_in_cb:
                    candidates &= space.closure_masks[image_b]
                if not candidates:
                    return
            for v in iter_bits(candidates):
                assignment[k] = v
                fill(k + 1)

        for lower in self.cells(n - 1):
            assignment[:half] = lower
            fill(half)
        return result


def enumerate_simplices(space: FiniteClosureSpace, selector: TheorySelector, n: int,
                        cap: Optional[int] = None) -> List[Simplex]:
    """
    枚举 n 维奇异单纯形

    Args:
        space: 目标空间
        selector: 单纯理论选择器
        n: 维数
        cap: 每维元素数上限

    Returns:
        字典序排列的顶点下标元组
    """
    if selector.flavor is not Flavor.SIMPLICIAL:
        raise InputError("enumerate_simplices 需要单纯理论")
    return Nerve(space, selector, cap).cells(n)


def enumerate_cubes(space: FiniteClosureSpace, selector: TheorySelector, n: int,
                    cap: Optional[int] = None) -> List[Cube]:
    """枚举 n 维奇异立方体，按角点元组的字典序"""
    if selector.flavor is not Flavor.CUBICAL:
        raise InputError("enumerate_cubes 需要立方理论")
    return Nerve(space, selector, cap).cells(n)


def brute_force_cells(space: FiniteClosureSpace, selector: TheorySelector, n: int) -> List[Cell]:
    """对全部赋值逐一做原始连续性检查(小规模测试的参照实现)"""
    size = n + 1 if selector.is_simplicial else 2 ** n
    result = []
    for cell in itertools.product(range(len(space)), repeat=size):
        if selector.is_simplicial:
            ok = is_continuous_simplex(space, cell, selector.interval)
        else:
            ok = is_continuous_cube(space, cell, selector.interval, selector.product)
        if ok:
            result.append(cell)
    return result


def cube_characterization(space: FiniteClosureSpace, q: Cube, interval: Interval, product: ProductKind) -> bool:
    """各理论下立方体连续性的导出刻画"""
    n = cube_dim(q)
    closure = space.closure_masks

    def inside(b: int, a: int) -> bool:
        return bool((closure[q[a]] >> q[b]) & 1)

    corners = range(2 ** n)
    if product is ProductKind.CROSS:
        if interval is Interval.J1:
            return all(inside(b, a) for a in corners for b in corners)
        return all(inside(b, a) for a in corners for b in corners if a & b == a)
    for a in corners:
        for i in range(n):
            if (a >> i) & 1:
                continue
            b = a | (1 << i)
            if not inside(b, a):
                return False
            if interval is Interval.J1 and not inside(a, b):
                return False
    return True


def simplex_characterization(space: FiniteClosureSpace, s: Sequence[int], interval: Interval) -> bool:
    closure = space.closure_masks
    n = len(s)
    if interval is Interval.J1:
        return all((closure[s[i]] >> s[j]) & 1 for i in range(n) for j in range(n))
    return all((closure[s[i]] >> s[j]) & 1 for i in range(n) for j in range(i, n))
