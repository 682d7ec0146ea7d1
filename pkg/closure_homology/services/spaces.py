"""
有限闭包空间上的构造与闭包代数

闭包、内部、连续性、乘积(× 与 ⊡)、余积、推出、商、子空间、拓扑修正、内部覆盖，
以及标准区间空间 J_{m,⊥}、J_{m,⊤}、J_m、J_±、J_{m,k}、J_{m,≤}。
构造出的空间的点标识符是规范的元组，按分量的下标字典序排列。
"""

import itertools
import logging
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import networkx as nx

from closure_homology.core.exceptions import InputError
from closure_homology.models.space import (
    Cover, FiniteClosureSpace, Point, SpaceMap, SpacePair, iter_bits, space_sorted,
)
from closure_homology.models.theory import ProductKind

logger = logging.getLogger(__name__)


# ----------------------------------------------------------------------
# 闭包代数
# ----------------------------------------------------------------------

def closure(space: FiniteClosureSpace, subset: Iterable[Point]) -> FrozenSet[Point]:
    """c(A) = ⋃_{x∈A} c({x})"""
    return space.points_of(space.closure_mask(space.mask_of(subset)))


def interior(space: FiniteClosureSpace, subset: Iterable[Point]) -> FrozenSet[Point]:
    """i(A) = X − c(X − A)"""
    return space.points_of(space.interior_mask(space.mask_of(subset)))


def is_open(space: FiniteClosureSpace, subset: Iterable[Point]) -> bool:
    mask = space.mask_of(subset)
    return space.interior_mask(mask) == mask


def is_closed(space: FiniteClosureSpace, subset: Iterable[Point]) -> bool:
    mask = space.mask_of(subset)
    return space.closure_mask(mask) == mask


def is_topological(space: FiniteClosureSpace) -> bool:
    """闭包是否幂等；由可加性只需检查单点"""
    return all(space.closure_mask(m) == m for m in space.closure_masks)


def is_interior_cover(cover: Cover) -> bool:
    """各部分的内部之并是否等于全空间"""
    space = cover.space
    covered = 0
    for mask in cover.masks:
        covered |= space.interior_mask(mask)
    return covered == space.full_mask


# ----------------------------------------------------------------------
# 映射
# ----------------------------------------------------------------------

def is_continuous(smap: SpaceMap) -> bool:
    """f(c({x})) ⊆ d({f(x)}) 对每个点成立；由可加性等价于对所有子集成立"""
    target = smap.target.closure_masks
    for i, mask in enumerate(smap.source.closure_masks):
        image = smap.image_mask(mask)
        if image & ~target[smap.images[i]]:
            return False
    return True


def compose(g: SpaceMap, f: SpaceMap) -> SpaceMap:
    """g∘f"""
    if f.target != g.source:
        raise InputError("复合映射的中间空间不一致")
    return SpaceMap.from_indices(f.source, g.target, [g.images[i] for i in f.images])


def identity_map(space: FiniteClosureSpace) -> SpaceMap:
    return SpaceMap.from_indices(space, space, range(len(space)))


def constant_map(source: FiniteClosureSpace, target: FiniteClosureSpace, point: Point) -> SpaceMap:
    return SpaceMap.from_indices(source, target, [target.index(point)] * len(source))


def inclusion(space: FiniteClosureSpace, subset: Iterable[Point]) -> SpaceMap:
    """子空间到全空间的包含映射"""
    sub = subspace(space, subset)
    return SpaceMap.from_indices(sub, space, [space.index(p) for p in sub.points])


def require_continuous(smap: SpaceMap, what: str = "映射") -> None:
    if not is_continuous(smap):
        raise InputError(f"{what}不连续")


def is_homeomorphism(smap: SpaceMap) -> bool:
    if len(set(smap.images)) != len(smap.source) or len(smap.source) != len(smap.target):
        return False
    inverse = [0] * len(smap.target)
    for i, j in enumerate(smap.images):
        inverse[j] = i
    back = SpaceMap.from_indices(smap.target, smap.source, inverse)
    return is_continuous(smap) and is_continuous(back)


def relation_graph(space: FiniteClosureSpace) -> nx.DiGraph:
    """闭包关系 x → y (y ∈ c({x})) 的有向图，含自环"""
    graph = nx.DiGraph()
    graph.add_nodes_from(range(len(space)))
    for i, mask in enumerate(space.closure_masks):
        graph.add_edges_from((i, j) for j in iter_bits(mask))
    return graph


def is_isomorphic(a: FiniteClosureSpace, b: FiniteClosureSpace) -> bool:
    """闭包空间同构，即闭包关系有向图同构"""
    if len(a) != len(b):
        return False
    return nx.is_isomorphic(relation_graph(a), relation_graph(b))


# ----------------------------------------------------------------------
# 乘积
# ----------------------------------------------------------------------

def _product_masks(factors: Sequence[FiniteClosureSpace], kind: ProductKind) -> List[int]:
    sizes = [len(f) for f in factors]
    strides = []
    stride = 1
    for size in reversed(sizes):
        strides.append(stride)
        stride *= size
    strides.reverse()

    masks = []
    for combo in itertools.product(*(range(s) for s in sizes)):
        base = sum(c * s for c, s in zip(combo, strides))
        mask = 0
        if kind is ProductKind.CROSS:
            # c×(x₁,…,xₙ) = c(x₁) × … × c(xₙ)
            for choice in itertools.product(*(list(iter_bits(f.closure_masks[c])) for f, c in zip(factors, combo))):
                mask |= 1 << sum(c * s for c, s in zip(choice, strides))
        else:
            # c⊡(x₁,…,xₙ)：只改变一个坐标
            for k, (f, c) in enumerate(zip(factors, combo)):
                for other in iter_bits(f.closure_masks[c]):
                    mask |= 1 << (base + (other - c) * strides[k])
        masks.append(mask)
    return masks


def product(a: FiniteClosureSpace, b: FiniteClosureSpace) -> FiniteClosureSpace:
    """乘积闭包 ×：最小邻域 N(x,y) = N(x) × N(y)"""
    points = [(x, y) for x in a.points for y in b.points]
    return FiniteClosureSpace.from_masks(points, _product_masks([a, b], ProductKind.CROSS))


def inductive_product(a: FiniteClosureSpace, b: FiniteClosureSpace) -> FiniteClosureSpace:
    """归纳乘积闭包 ⊡：c((x,y)) = ({x}×c(y)) ∪ (c(x)×{y})"""
    points = [(x, y) for x in a.points for y in b.points]
    return FiniteClosureSpace.from_masks(points, _product_masks([a, b], ProductKind.INDUCTIVE))


def binary_product(a: FiniteClosureSpace, b: FiniteClosureSpace, kind: ProductKind) -> FiniteClosureSpace:
    return product(a, b) if kind is ProductKind.CROSS else inductive_product(a, b)


def power(space: FiniteClosureSpace, n: int, kind: ProductKind) -> FiniteClosureSpace:
    """
    n 重乘积 J^{⊗n}，点为 n 元组

    Args:
        space: 因子空间
        n: 次数，n = 0 时返回单点空间
        kind: 乘积运算
    """
    if n < 0:
        raise InputError(f"次数必须非负，得到 {n}")
    if n == 0:
        return point_space()
    points = list(itertools.product(space.points, repeat=n))
    return FiniteClosureSpace.from_masks(points, _product_masks([space] * n, kind))


def projections(prod: FiniteClosureSpace, a: FiniteClosureSpace, b: FiniteClosureSpace) -> Tuple[SpaceMap, SpaceMap]:
    """二元乘积到两个因子的投影"""
    p1 = SpaceMap.from_indices(prod, a, [a.index(x) for x, _ in prod.points])
    p2 = SpaceMap.from_indices(prod, b, [b.index(y) for _, y in prod.points])
    return p1, p2


# ----------------------------------------------------------------------
# 余极限与子空间
# ----------------------------------------------------------------------

def coproduct(a: FiniteClosureSpace, b: FiniteClosureSpace) -> Tuple[FiniteClosureSpace, SpaceMap, SpaceMap]:
    """不交并，分量闭包；点为 (0, x) 与 (1, y)"""
    points = [(0, x) for x in a.points] + [(1, y) for y in b.points]
    shift = len(a)
    masks = list(a.closure_masks) + [m << shift for m in b.closure_masks]
    space = FiniteClosureSpace.from_masks(points, masks)
    inj1 = SpaceMap.from_indices(a, space, range(len(a)))
    inj2 = SpaceMap.from_indices(b, space, range(shift, shift + len(b)))
    return space, inj1, inj2


def _quotient(space: FiniteClosureSpace, classes: Sequence[Sequence[int]]) -> Tuple[FiniteClosureSpace, SpaceMap]:
    """
    按等价类做商：c_Q(B) = p(c(p^{-1}(B)))

    Args:
        space: 原空间
        classes: 点下标的划分，每类的代表元为类中最小下标
    """
    classes = sorted((sorted(c) for c in classes), key=lambda c: c[0])
    owner = [0] * len(space)
    for k, cls in enumerate(classes):
        for i in cls:
            owner[i] = k
    masks = []
    for cls in classes:
        image = 0
        for i in cls:
            for j in iter_bits(space.closure_masks[i]):
                image |= 1 << owner[j]
        masks.append(image)
    points = [space.points[cls[0]] for cls in classes]
    quotient = FiniteClosureSpace.from_masks(points, masks)
    return quotient, SpaceMap.from_indices(space, quotient, owner)


def _merge_classes(size: int, pairs: Iterable[Tuple[int, int]]) -> List[List[int]]:
    graph = nx.Graph()
    graph.add_nodes_from(range(size))
    graph.add_edges_from(pairs)
    return [sorted(c) for c in nx.connected_components(graph)]


def pushout(f: SpaceMap, g: SpaceMap) -> Tuple[FiniteClosureSpace, SpaceMap, SpaceMap]:
    """
    推出 X ⊔ Y / (f(a) ∼ g(a))

    Args:
        f: 连续映射 A → X
        g: 连续映射 A → Y

    Returns:
        (P, i, j)，其中 i: X → P，j: Y → P
    """
    if f.source != g.source:
        raise InputError("推出的两个映射必须有相同的定义域")
    require_continuous(f, "推出映射 f ")
    require_continuous(g, "推出映射 g ")
    disjoint, inj1, inj2 = coproduct(f.target, g.target)
    shift = len(f.target)
    classes = _merge_classes(len(disjoint), ((fi, shift + gi) for fi, gi in zip(f.images, g.images)))
    space, proj = _quotient(disjoint, classes)
    i = compose(proj, inj1)
    j = compose(proj, inj2)
    logger.debug(f"推出构造完成: {len(f.target)} + {len(g.target)} 点 → {len(space)} 点")
    return space, i, j


def coequalizer(f: SpaceMap, g: SpaceMap) -> Tuple[FiniteClosureSpace, SpaceMap]:
    """余等化子 Y / (f(x) ∼ g(x))"""
    if f.source != g.source or f.target != g.target:
        raise InputError("余等化子的两个映射必须平行")
    classes = _merge_classes(len(f.target), zip(f.images, g.images))
    return _quotient(f.target, classes)


def quotient_by_subspace(pair: SpacePair) -> Tuple[FiniteClosureSpace, SpaceMap]:
    """X/A：把 A 压成一点(代表元为 A 中点序最小者)"""
    if not pair.mask:
        raise InputError("商空间 X/A 要求 A 非空")
    collapsed = list(iter_bits(pair.mask))
    classes = [collapsed] + [[i] for i in range(len(pair.ambient)) if not (pair.mask >> i) & 1]
    return _quotient(pair.ambient, classes)


def subspace(space: FiniteClosureSpace, subset: Iterable[Point]) -> FiniteClosureSpace:
    """子空间闭包 c_E(A) = c(A) ∩ E，点保持原空间的次序"""
    mask = space.mask_of(subset)
    kept = list(iter_bits(mask))
    position = {i: k for k, i in enumerate(kept)}
    masks = []
    for i in kept:
        sub = 0
        for j in iter_bits(space.closure_masks[i] & mask):
            sub |= 1 << position[j]
        masks.append(sub)
    return FiniteClosureSpace.from_masks([space.points[i] for i in kept], masks)


def topological_modification(space: FiniteClosureSpace) -> FiniteClosureSpace:
    """迭代单点闭包直到不动点，得到比 c 粗的最细拓扑闭包"""
    masks = []
    for mask in space.closure_masks:
        while True:
            grown = space.closure_mask(mask)
            if grown == mask:
                break
            mask = grown
        masks.append(mask)
    return FiniteClosureSpace.from_masks(space.points, masks)


# ----------------------------------------------------------------------
# 标准空间
# ----------------------------------------------------------------------

def _interval_space(m: int, rule) -> FiniteClosureSpace:
    points = list(range(m + 1))
    masks = []
    for i in points:
        mask = 0
        for j in points:
            if i == j or rule(i, j):
                mask |= 1 << j
        masks.append(mask)
    return FiniteClosureSpace.from_masks(points, masks)


def point_space() -> FiniteClosureSpace:
    return FiniteClosureSpace.from_masks([()], [1])


def discrete_space(n: int) -> FiniteClosureSpace:
    return _interval_space(n - 1, lambda i, j: False) if n > 0 else FiniteClosureSpace.from_masks([], [])


def indiscrete_space(n: int) -> FiniteClosureSpace:
    return _interval_space(n - 1, lambda i, j: True) if n > 0 else FiniteClosureSpace.from_masks([], [])


def j_mk(m: int, k: int) -> FiniteClosureSpace:
    """J_{m,k}：第 i 位为 1 时 i ∈ c(i−1)，为 0 时 i−1 ∈ c(i)"""
    if not 0 <= k <= 2 ** m - 1:
        raise InputError(f"J_{{m,k}} 要求 0 ≤ k ≤ 2^m − 1，得到 m={m}, k={k}")

    def rule(i, j):
        if j == i + 1:
            return bool((k >> i) & 1)
        if j == i - 1:
            return not (k >> (i - 1)) & 1
        return False

    return _interval_space(m, rule)


def cycle_space(n: int) -> FiniteClosureSpace:
    """自反对称的 n 圈 Cₙ"""
    if n < 3:
        raise InputError(f"圈至少需要 3 个点，得到 {n}")
    masks = [(1 << i) | (1 << ((i + 1) % n)) | (1 << ((i - 1) % n)) for i in range(n)]
    return FiniteClosureSpace.from_masks(list(range(n)), masks)


def path_space(n: int) -> FiniteClosureSpace:
    """n 个点的路径 Pₙ，即 J_{n−1}"""
    return standard_space("J_m", n - 1)


STANDARD_KINDS = ("J_bot", "J_top", "J_m", "J_plus", "J_minus", "J_mk", "J_le",
                  "discrete", "indiscrete", "point", "cycle", "path")


def standard_space(kind: str, m: int = 1, k: Optional[int] = None) -> FiniteClosureSpace:
    """
    构造标准空间

    Args:
        kind: 空间种类，见 STANDARD_KINDS
        m: J 系列的长度参数，或 discrete/indiscrete/cycle/path 的点数
        k: J_mk 的位模式

    Returns:
        点为 0..m 的闭包空间
    """
    if kind not in STANDARD_KINDS:
        raise InputError(f"未知的标准空间: {kind}")
    if m < 0:
        raise InputError(f"参数 m 必须非负，得到 {m}")
    if kind == "J_bot":
        return _interval_space(m, lambda i, j: False)
    if kind == "J_top":
        return _interval_space(m, lambda i, j: True)
    if kind == "J_m":
        return _interval_space(m, lambda i, j: abs(i - j) <= 1)
    if kind == "J_plus":
        return j_mk(1, 1)
    if kind == "J_minus":
        return j_mk(1, 0)
    if kind == "J_mk":
        if k is None:
            raise InputError("J_mk 需要参数 k")
        return j_mk(m, k)
    if kind == "J_le":
        return _interval_space(m, lambda i, j: i <= j)
    if kind == "discrete":
        return discrete_space(m)
    if kind == "indiscrete":
        return indiscrete_space(m)
    if kind == "cycle":
        return cycle_space(m)
    if kind == "path":
        return _interval_space(m - 1, lambda i, j: abs(i - j) <= 1)
    return point_space()


J1 = standard_space("J_m", 1)
JPLUS = standard_space("J_plus")
JMINUS = standard_space("J_minus")


# ----------------------------------------------------------------------
# 区间拼接
# ----------------------------------------------------------------------

def concatenate(j: FiniteClosureSpace, k: FiniteClosureSpace) -> FiniteClosureSpace:
    """
    区间拼接 J*K：把 J 的末端点与 K 的起始点粘合

    端点约定为点序中的第一个与最后一个点；结果的点重新编号为 0..|J|+|K|−2。
    """
    star = point_space()
    end_of_j = SpaceMap.from_indices(star, j, [len(j) - 1])
    start_of_k = SpaceMap.from_indices(star, k, [0])
    glued, i_map, j_map = pushout(end_of_j, start_of_k)
    # 按 J 的点、再按 K 的其余点重新编号
    order = list(i_map.images) + [x for x in j_map.images[1:]]
    position = {old: new for new, old in enumerate(order)}
    masks = [0] * len(order)
    for old, new in position.items():
        for t in iter_bits(glued.closure_masks[old]):
            masks[new] |= 1 << position[t]
    return FiniteClosureSpace.from_masks(list(range(len(order))), masks)


def interval_power(j: FiniteClosureSpace, m: int) -> FiniteClosureSpace:
    """J^{*m}，m ≥ 1"""
    if m < 1:
        raise InputError(f"拼接次数必须 ≥ 1，得到 {m}")
    result = j
    for _ in range(m - 1):
        result = concatenate(result, j)
    return result


def is_interval_morphism_identity(m: int, k: int) -> bool:
    """恒等映射 J_{m,k} → J_m 是否连续"""
    source = j_mk(m, k)
    target = standard_space("J_m", m)
    return is_continuous(SpaceMap.from_indices(source, target, range(m + 1)))


def canonical_relabel(space: FiniteClosureSpace) -> Dict[Point, str]:
    """点标识符的规范字符串名，用于写文件"""
    return {p: format_point(p) for p in space.points}


def format_point(point: Point) -> str:
    if isinstance(point, tuple):
        return "(" + ",".join(format_point(x) for x in point) + ")"
    return str(point)
