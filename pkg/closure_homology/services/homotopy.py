"""
路径分支与 (J,⊗) 同伦

J 只有两个点，所以给定 f、g 时一步同伦 H: X⊗J → Y 若存在则唯一：H(−,0)=f，H(−,1)=g。
多步同伦是一步同伦图中的路径；搜索按映射的字典序做广度优先，见证因而可复现。
"""

import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import networkx as nx

from closure_homology.core.config import settings
from closure_homology.core.exceptions import InputError, ResourceLimitError
from closure_homology.models.space import FiniteClosureSpace, Point, SpaceMap, iter_bits
from closure_homology.models.theory import Interval, ProductKind, TheorySelector
from closure_homology.services import spaces
from closure_homology.services.nerves import interval_space

logger = logging.getLogger(__name__)

Images = Tuple[int, ...]


# ----------------------------------------------------------------------
# 路径分支
# ----------------------------------------------------------------------

@dataclass
class Pi0Partition:
    """π₀ᴶ(X)：按各类最小点排序，类内按点序"""
    space: FiniteClosureSpace
    interval: Interval
    classes: List[List[Point]]

    @property
    def count(self) -> int:
        return len(self.classes)

    def class_of(self, point: Point) -> int:
        for k, cls in enumerate(self.classes):
            if point in cls:
                return k
        raise InputError(f"未知点: {point!r}")


def one_step_graph(space: FiniteClosureSpace, interval: Interval) -> nx.Graph:
    """J 一步路径连通的无向图：J₁ 要求双向相邻，J₊ 只要求 y ∈ c({x})"""
    graph = nx.Graph()
    graph.add_nodes_from(range(len(space)))
    for i, mask in enumerate(space.closure_masks):
        for j in iter_bits(mask):
            if j != i and (interval is Interval.JPLUS or space.adjacent(j, i)):
                graph.add_edge(i, j)
    return graph


def pi0(space: FiniteClosureSpace, interval: Interval) -> Pi0Partition:
    components = sorted((sorted(c) for c in nx.connected_components(one_step_graph(space, interval))),
                        key=lambda c: c[0])
    classes = [[space.points[i] for i in c] for c in components]
    return Pi0Partition(space=space, interval=interval, classes=classes)


def is_one_step_path(space: FiniteClosureSpace, x: Point, y: Point, interval: Interval) -> bool:
    """是否存在连续映射 J → X 使 0 ↦ x，1 ↦ y"""
    i, j = space.index(x), space.index(y)
    if interval is Interval.J1:
        return space.adjacent(i, j) and space.adjacent(j, i)
    return space.adjacent(i, j)


def path_connected_via(space: FiniteClosureSpace, x: Point, y: Point, interval: Interval,
                       max_steps: Optional[int] = None) -> bool:
    """
    x 与 y 是否由 J 路径相连

    J₁ 时尝试 J_m，J₊ 时尝试所有 J_{m,k}，m 从 1 增长到 max_steps(默认 |X|)。
    """
    if x == y:
        return True
    source, target = space.index(x), space.index(y)
    max_steps = max_steps or len(space)
    for m in range(1, max_steps + 1):
        patterns = [None] if interval is Interval.J1 else range(2 ** m)
        for k in patterns:
            path = spaces.standard_space("J_m", m) if k is None else spaces.j_mk(m, k)
            fixed = {0: source, m: target}
            if next(extend_continuous(path, space, fixed, cap=settings.MAX_CELLS), None) is not None:
                return True
    return False


# ----------------------------------------------------------------------
# 约束回溯
# ----------------------------------------------------------------------

def extend_continuous(source: FiniteClosureSpace, target: FiniteClosureSpace, fixed: Dict[int, int],
                      cap: Optional[int] = None) -> Iterator[Images]:
    """
    把部分赋值扩展为连续映射，按字典序逐个产生

    对每个待定点 a 与已定点 b：b ∈ c(a) 要求 H(a) ∈ N(H(b))，a ∈ c(b) 要求 H(a) ∈ c(H(b))。

    Args:
        source: 定义域
        target: 值域
        fixed: 已固定的 点下标 → 像下标，彼此不相容时不产生任何映射
        cap: 产生数量上限，超出抛出资源错误
    """
    cap = cap if cap is not None else settings.MAX_CELLS
    size = len(source)
    free = [a for a in range(size) if a not in fixed]
    assignment = [0] * size
    assigned = 0
    for a, v in fixed.items():
        assignment[a] = v
        assigned |= 1 << a
    closures = source.closure_masks
    neighborhoods = source.neighborhood_masks
    count = 0
    for a, v in fixed.items():
        for b in iter_bits(closures[a] & assigned):
            if not target.adjacent(v, assignment[b]):
                return

    # 每个待定点的约束只涉及已定点与排在它前面的待定点
    prior = []
    done = assigned
    for a in free:
        prior.append((done & closures[a] & ~(1 << a), done & neighborhoods[a] & ~(1 << a)))
        done |= 1 << a

    def fill(k: int) -> Iterator[Images]:
        nonlocal count
        if k == len(free):
            count += 1
            if count > cap:
                raise ResourceLimitError(f"连续映射数超过上限 {cap}")
            yield tuple(assignment)
            return
        a = free[k]
        candidates = target.full_mask
        in_closure, in_nbhd = prior[k]
        for b in iter_bits(in_closure):
            candidates &= target.neighborhood_masks[assignment[b]]
        for b in iter_bits(in_nbhd):
            candidates &= target.closure_masks[assignment[b]]
        for v in iter_bits(candidates):
            assignment[a] = v
            yield from fill(k + 1)

    yield from fill(0)


def enumerate_maps(source: FiniteClosureSpace, target: FiniteClosureSpace,
                   cap: Optional[int] = None, fixed: Optional[Dict[Point, Point]] = None) -> List[SpaceMap]:
    """全部连续映射，按像的字典序"""
    pinned = {}
    for p, q in (fixed or {}).items():
        pinned[source.index(p)] = target.index(q)
    return [SpaceMap.from_indices(source, target, images)
            for images in extend_continuous(source, target, pinned, cap)]


# ----------------------------------------------------------------------
# 同伦
# ----------------------------------------------------------------------

def _require_continuous(*maps: SpaceMap) -> None:
    for smap in maps:
        if not spaces.is_continuous(smap):
            raise InputError(f"映射不连续: {smap!r}")


@dataclass
class HomotopyStep:
    """
    一步同伦 H: X⊗J → Y

    forward 为真时 H(−,0)=hᵢ、H(−,1)=hᵢ₊₁；为假时两端对调(J₊ 的一步关系有方向)。
    """
    combined: SpaceMap
    forward: bool = True


@dataclass
class HomotopyWitness:
    """映射链 h₀=f,…,h_m=g 以及每一步的组合映射"""
    maps: List[SpaceMap]
    steps: List[HomotopyStep]
    interval: Interval
    product: ProductKind

    @property
    def length(self) -> int:
        return len(self.steps)

    def tables(self) -> List[Dict[str, str]]:
        """序列化为赋值表列表"""
        return [{spaces.format_point(p): spaces.format_point(q) for p, q in h.assignment().items()}
                for h in self.maps]

    def verify(self) -> bool:
        """逐步重新检查组合映射的连续性与端点"""
        for k, step in enumerate(self.steps):
            start, end = (self.maps[k], self.maps[k + 1]) if step.forward else (self.maps[k + 1], self.maps[k])
            if not spaces.is_continuous(step.combined):
                return False
            if _layer(step.combined.images, 0) != start.images or _layer(step.combined.images, 1) != end.images:
                return False
        return True


def _layer(images: Sequence[int], t: int) -> Images:
    """X⊗J 的点序为 (x, t)，x 在外层"""
    return tuple(images[2 * i + t] for i in range(len(images) // 2))


def _interleave(bottom: Images, top: Images) -> Images:
    result = []
    for a, b in zip(bottom, top):
        result.extend((a, b))
    return tuple(result)


class HomotopySearch:
    """固定 X、Y 与 (J,⊗) 的同伦搜索，缓存 X⊗J"""

    def __init__(self, source: FiniteClosureSpace, target: FiniteClosureSpace,
                 interval: Interval, product: ProductKind):
        if interval is Interval.I:
            raise InputError("区间 I 不受支持")
        self.source = source
        self.target = target
        self.interval = interval
        self.product = product
        self.cylinder = spaces.binary_product(source, interval_space(interval), product)

    def combined(self, bottom: Images, top: Images) -> SpaceMap:
        return SpaceMap.from_indices(self.cylinder, self.target, _interleave(bottom, top))

    def one_step(self, f: SpaceMap, g: SpaceMap) -> Optional[HomotopyStep]:
        candidate = self.combined(f.images, g.images)
        if spaces.is_continuous(candidate):
            return HomotopyStep(candidate, forward=True)
        return None

    def neighbors(self, images: Images) -> List[Tuple[Images, bool]]:
        """一步可达的映射(两个方向)，按字典序；J₁ 下关系对称只需一个方向"""
        n = len(images)
        found: Dict[Images, bool] = {}
        directions = (0,) if self.interval is Interval.J1 else (0, 1)
        for t in directions:
            fixed = {2 * i + t: images[i] for i in range(n)}
            for full in extend_continuous(self.cylinder, self.target, fixed):
                other = _layer(full, 1 - t)
                if other != images and other not in found:
                    found[other] = t == 0
        return sorted(found.items())

    def search(self, f: SpaceMap, g: SpaceMap, budget: int, max_chain: int) -> "HomotopyResult":
        """从 f 出发的广度优先搜索，目标 g"""
        if f.images == g.images:
            return HomotopyResult("yes", HomotopyWitness([f], [], self.interval, self.product), explored=1)
        parent: Dict[Images, Tuple[Optional[Images], bool]] = {f.images: (None, True)}
        frontier = deque([(f.images, 0)])
        explored = 0
        truncated = False
        while frontier:
            current, depth = frontier.popleft()
            if depth >= max_chain:
                truncated = True
                continue
            explored += 1
            if explored > budget:
                logger.info(f"同伦搜索超出预算 {budget}")
                return HomotopyResult("inconclusive", None, explored=explored - 1)
            for other, forward in self.neighbors(current):
                if other in parent:
                    continue
                parent[other] = (current, forward)
                if other == g.images:
                    return HomotopyResult("yes", self._witness(parent, g.images), explored=explored)
                frontier.append((other, depth + 1))
        status = "inconclusive" if truncated else "no"
        return HomotopyResult(status, None, explored=explored)

    def _witness(self, parent: Dict[Images, Tuple[Optional[Images], bool]], end: Images) -> HomotopyWitness:
        chain: List[Images] = [end]
        directions: List[bool] = []
        while parent[chain[-1]][0] is not None:
            previous, forward = parent[chain[-1]]
            directions.append(forward)
            chain.append(previous)
        chain.reverse()
        directions.reverse()
        maps = [SpaceMap.from_indices(self.source, self.target, images) for images in chain]
        steps = []
        for k, forward in enumerate(directions):
            bottom, top = (chain[k], chain[k + 1]) if forward else (chain[k + 1], chain[k])
            steps.append(HomotopyStep(self.combined(bottom, top), forward))
        return HomotopyWitness(maps, steps, self.interval, self.product)


@dataclass
class HomotopyResult:
    """status ∈ {yes, no, inconclusive}"""
    status: str
    witness: Optional[HomotopyWitness] = None
    explored: int = 0

    @property
    def homotopic(self) -> bool:
        return self.status == "yes"


def one_step_homotopic(f: SpaceMap, g: SpaceMap, interval: Interval,
                       product: ProductKind) -> Optional[HomotopyStep]:
    """
    一步 (J,⊗) 同伦

    Returns:
        H(−,0)=f、H(−,1)=g 的组合映射连续时返回该步，否则 None
    """
    if f.source != g.source or f.target != g.target:
        raise InputError("一步同伦要求两个映射有相同的定义域与值域")
    _require_continuous(f, g)
    return HomotopySearch(f.source, f.target, interval, product).one_step(f, g)


def are_homotopic(f: SpaceMap, g: SpaceMap, interval: Interval, product: ProductKind,
                  budget: Optional[int] = None, max_chain: Optional[int] = None) -> HomotopyResult:
    """
    f ∼_{(J,⊗)} g 的判定

    Args:
        budget: 展开的映射数上限，默认 HOMOTOPY_BUDGET
        max_chain: 见证链长度上限，默认 MAX_CHAIN_LENGTH

    Returns:
        yes 带见证；no 表示连通分支已穷尽；inconclusive 表示预算或链长不足
    """
    if f.source != g.source or f.target != g.target:
        raise InputError("同伦判定要求两个映射有相同的定义域与值域")
    _require_continuous(f, g)
    budget = budget if budget is not None else settings.HOMOTOPY_BUDGET
    max_chain = max_chain if max_chain is not None else settings.MAX_CHAIN_LENGTH
    result = HomotopySearch(f.source, f.target, interval, product).search(f, g, budget, max_chain)
    logger.debug(f"同伦搜索 ({interval.value},{product.value}): {result.status}，展开 {result.explored} 个映射")
    return result


def homotopy_classes(source: FiniteClosureSpace, target: FiniteClosureSpace, interval: Interval,
                     product: ProductKind, cap: Optional[int] = None) -> List[List[SpaceMap]]:
    """全部连续映射按 ∼_{(J,⊗)} 划分，各类按首个映射的字典序排列"""
    maps = list(extend_continuous(source, target, {}, cap))
    search = HomotopySearch(source, target, interval, product)
    known = set(maps)
    graph = nx.Graph()
    graph.add_nodes_from(maps)
    for images in maps:
        for other, _ in search.neighbors(images):
            if other in known:
                graph.add_edge(images, other)
    classes = sorted((sorted(c) for c in nx.connected_components(graph)), key=lambda c: c[0])
    return [[SpaceMap.from_indices(source, target, images) for images in cls] for cls in classes]


def is_contractible(space: FiniteClosureSpace, interval: Interval, product: ProductKind,
                    budget: Optional[int] = None) -> HomotopyResult:
    """恒等映射是否同伦于某个常值映射；成功时见证即可缩证书"""
    identity = spaces.identity_map(space)
    if pi0(space, interval).count > 1:
        return HomotopyResult("no")
    inconclusive = False
    explored = 0
    for point in space.points:
        constant = spaces.constant_map(space, space, point)
        result = are_homotopic(identity, constant, interval, product, budget)
        explored += result.explored
        if result.homotopic:
            result.explored = explored
            return result
        inconclusive = inconclusive or result.status == "inconclusive"
    return HomotopyResult("inconclusive" if inconclusive else "no", explored=explored)


def implies(finer: TheorySelector, coarser: TheorySelector) -> bool:
    """
    同伦关系的蕴含格：(J₁,×) 最大；J₁ ⇒ J₊，× ⇒ ⊡
    """
    interval_ok = finer.interval is Interval.J1 or coarser.interval is Interval.JPLUS
    product_ok = finer.product is ProductKind.CROSS or coarser.product is ProductKind.INDUCTIVE
    return interval_ok and product_ok


@dataclass
class OrderCheck:
    finer: str
    coarser: str
    applicable: bool
    finer_status: str = "inconclusive"
    coarser_status: str = "inconclusive"
    holds: Optional[bool] = None
    details: Dict[str, object] = field(default_factory=dict)


def order_check(f: SpaceMap, g: SpaceMap, finer: TheorySelector, coarser: TheorySelector,
                budget: Optional[int] = None) -> OrderCheck:
    """在较细关系下同伦的映射对，在较粗关系下也必须同伦"""
    report = OrderCheck(finer=finer.label, coarser=coarser.label, applicable=implies(finer, coarser))
    if not report.applicable:
        return report
    first = are_homotopic(f, g, finer.interval, finer.product, budget)
    report.finer_status = first.status
    if not first.homotopic:
        return report
    second = are_homotopic(f, g, coarser.interval, coarser.product, budget)
    report.coarser_status = second.status
    if second.status != "inconclusive":
        report.holds = second.homotopic
    return report


# ----------------------------------------------------------------------
# 形变收缩
# ----------------------------------------------------------------------

def find_retraction(space: FiniteClosureSpace, subset: Sequence[Point]) -> Optional[SpaceMap]:
    """按字典序找第一个连续收缩 X → A (A 上为恒等)"""
    sub = spaces.subspace(space, subset)
    fixed = {space.index(p): sub.index(p) for p in sub.points}
    images = next(extend_continuous(space, sub, fixed), None)
    return None if images is None else SpaceMap.from_indices(space, sub, images)


def is_deformation_retraction(space: FiniteClosureSpace, subset: Sequence[Point], interval: Interval,
                              product: ProductKind, retraction: Optional[SpaceMap] = None,
                              budget: Optional[int] = None) -> HomotopyResult:
    """
    A 是否是 X 的形变收缩核

    给出收缩 r: X → A 时检查它并判定 id_X ∼ i∘r；否则按字典序尝试所有连续收缩。
    """
    sub = spaces.subspace(space, subset)
    inclusion = SpaceMap.from_indices(sub, space, [space.index(p) for p in sub.points])
    candidates: List[SpaceMap]
    if retraction is not None:
        if retraction.source != space or retraction.target != sub:
            raise InputError("收缩映射的定义域或值域不符")
        _require_continuous(retraction)
        if any(retraction(p) != p for p in sub.points):
            raise InputError("收缩映射在子空间上不是恒等")
        candidates = [retraction]
    else:
        fixed = {space.index(p): sub.index(p) for p in sub.points}
        candidates = [SpaceMap.from_indices(space, sub, images) for images in extend_continuous(space, sub, fixed)]
    identity = spaces.identity_map(space)
    inconclusive = False
    for r in candidates:
        result = are_homotopic(identity, spaces.compose(inclusion, r), interval, product, budget)
        if result.homotopic:
            return result
        inconclusive = inconclusive or result.status == "inconclusive"
    return HomotopyResult("inconclusive" if inconclusive else "no")


def verify_witness_tables(tables: List[Dict[str, str]], source: FiniteClosureSpace, target: FiniteClosureSpace,
                          interval: Interval, product: ProductKind) -> bool:
    """独立复核序列化的见证：相邻映射在某个方向上一步同伦"""
    names_source = {spaces.format_point(p): p for p in source.points}
    names_target = {spaces.format_point(p): p for p in target.points}
    try:
        maps = [SpaceMap(source, target, {names_source[k]: names_target[v] for k, v in table.items()})
                for table in tables]
    except KeyError as e:
        raise InputError(f"见证中出现未知点: {e}") from None
    search = HomotopySearch(source, target, interval, product)
    for h, k in zip(maps, maps[1:]):
        if search.one_step(h, k) is None and search.one_step(k, h) is None:
            return False
    return all(spaces.is_continuous(h) for h in maps)
