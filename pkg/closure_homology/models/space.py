"""
有限闭包空间的领域类型

有限闭包空间只存储单点闭包：由可加性，任意子集的闭包是其各点单点闭包之并。
每个点的单点闭包以位向量(Python整数)保存，第 i 位对应第 i 个点。
最小邻域 N(x) = {y : x ∈ c(y)} 是闭包关系的转置，构造时一次算好，之后不可变。
"""

import logging
from typing import Dict, FrozenSet, Hashable, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

from closure_homology.core.config import settings
from closure_homology.core.exceptions import InputError, ResourceLimitError

logger = logging.getLogger(__name__)

Point = Hashable


def iter_bits(mask: int) -> Iterator[int]:
    """按从低到高的顺序遍历位向量中置位的下标"""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class FiniteClosureSpace:
    """有限Čech闭包空间：有序点集 + 单点闭包关系"""

    __slots__ = ("points", "_index", "_closure", "_nbhd", "_hash")

    def __init__(self, points: Sequence[Point], singleton_closure: Mapping[Point, Iterable[Point]],
                 max_points: Optional[int] = None):
        """
        初始化闭包空间

        Args:
            points: 有序点集，点标识符不可重复
            singleton_closure: 每个点到其单点闭包的映射，每个闭包必须包含该点自身
            max_points: 点数上限，默认取配置 MAX_POINTS
        """
        points = tuple(points)
        index = {p: i for i, p in enumerate(points)}
        if len(index) != len(points):
            raise InputError("点标识符重复")
        cap = max_points if max_points is not None else settings.MAX_POINTS
        if len(points) > cap:
            raise ResourceLimitError(f"点数 {len(points)} 超过上限 {cap}")

        masks = []
        for p in points:
            if p not in singleton_closure:
                raise InputError(f"点 {p!r} 缺少单点闭包")
            mask = 0
            for q in singleton_closure[p]:
                if q not in index:
                    raise InputError(f"点 {p!r} 的闭包中出现未知点 {q!r}")
                mask |= 1 << index[q]
            if not (mask >> index[p]) & 1:
                raise InputError(f"点 {p!r} 的闭包不包含自身(违反自反性)")
            masks.append(mask)
        extra = set(singleton_closure) - set(index)
        if extra:
            raise InputError(f"闭包表中出现未知点: {sorted(map(repr, extra))}")

        self._init_from_masks(points, index, tuple(masks))

    @classmethod
    def from_masks(cls, points: Sequence[Point], masks: Sequence[int]) -> "FiniteClosureSpace":
        """由位向量直接构造(内部使用，调用方保证自反性)"""
        points = tuple(points)
        if len(points) > settings.MAX_POINTS:
            raise ResourceLimitError(f"点数 {len(points)} 超过上限 {settings.MAX_POINTS}")
        masks = tuple(m | (1 << i) for i, m in enumerate(masks))
        space = cls.__new__(cls)
        space._init_from_masks(points, {p: i for i, p in enumerate(points)}, masks)
        return space

    def _init_from_masks(self, points: Tuple[Point, ...], index: Dict[Point, int], masks: Tuple[int, ...]) -> None:
        self.points = points
        self._index = index
        self._closure = masks
        nbhd = [0] * len(points)
        for i, mask in enumerate(masks):
            for j in iter_bits(mask):
                nbhd[j] |= 1 << i
        self._nbhd = tuple(nbhd)
        self._hash = hash((points, masks))

    # ------------------------------------------------------------------
    # 基本访问
    # ------------------------------------------------------------------
    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self) -> Iterator[Point]:
        return iter(self.points)

    def __contains__(self, point: object) -> bool:
        return point in self._index

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FiniteClosureSpace):
            return NotImplemented
        return self.points == other.points and self._closure == other._closure

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"FiniteClosureSpace({len(self.points)} points)"

    @property
    def full_mask(self) -> int:
        return (1 << len(self.points)) - 1

    @property
    def closure_masks(self) -> Tuple[int, ...]:
        return self._closure

    @property
    def neighborhood_masks(self) -> Tuple[int, ...]:
        return self._nbhd

    def index(self, point: Point) -> int:
        try:
            return self._index[point]
        except KeyError:
            raise InputError(f"未知点: {point!r}") from None

    def mask_of(self, subset: Iterable[Point]) -> int:
        """把点子集转换为位向量，遇到未知点抛出输入错误"""
        mask = 0
        for p in subset:
            mask |= 1 << self.index(p)
        return mask

    def points_of(self, mask: int) -> FrozenSet[Point]:
        return frozenset(self.points[i] for i in iter_bits(mask))

    def ordered(self, mask: int) -> List[Point]:
        """按空间的点序列出位向量中的点"""
        return [self.points[i] for i in iter_bits(mask)]

    def closure_mask(self, mask: int) -> int:
        result = 0
        for i in iter_bits(mask):
            result |= self._closure[i]
        return result

    def interior_mask(self, mask: int) -> int:
        full = self.full_mask
        return full & ~self.closure_mask(full & ~mask)

    def singleton_closure(self, point: Point) -> FrozenSet[Point]:
        return self.points_of(self._closure[self.index(point)])

    def neighborhood(self, point: Point) -> FrozenSet[Point]:
        """最小邻域 N(x)"""
        return self.points_of(self._nbhd[self.index(point)])

    def adjacent(self, i: int, j: int) -> bool:
        """第 j 个点是否属于第 i 个点的单点闭包"""
        return bool((self._closure[i] >> j) & 1)

    def closure_table(self) -> Dict[Point, List[Point]]:
        return {p: self.ordered(self._closure[i]) for i, p in enumerate(self.points)}


class SpaceMap:
    """两个有限闭包空间之间的点映射；连续性是可检查的谓词而不是不变量"""

    __slots__ = ("source", "target", "images")

    def __init__(self, source: FiniteClosureSpace, target: FiniteClosureSpace,
                 assignment: Mapping[Point, Point]):
        images = []
        for p in source.points:
            if p not in assignment:
                raise InputError(f"映射在点 {p!r} 处未定义")
            images.append(target.index(assignment[p]))
        extra = set(assignment) - set(source.points)
        if extra:
            raise InputError(f"映射定义域中出现未知点: {sorted(map(repr, extra))}")
        self.source = source
        self.target = target
        self.images = tuple(images)

    @classmethod
    def from_indices(cls, source: FiniteClosureSpace, target: FiniteClosureSpace,
                     images: Sequence[int]) -> "SpaceMap":
        smap = cls.__new__(cls)
        smap.source = source
        smap.target = target
        smap.images = tuple(images)
        return smap

    def __call__(self, point: Point) -> Point:
        return self.target.points[self.images[self.source.index(point)]]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SpaceMap):
            return NotImplemented
        return self.source == other.source and self.target == other.target and self.images == other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def __repr__(self) -> str:
        return f"SpaceMap({self.assignment()})"

    def assignment(self) -> Dict[Point, Point]:
        return {p: self.target.points[j] for p, j in zip(self.source.points, self.images)}

    def image_mask(self, mask: int) -> int:
        result = 0
        for i in iter_bits(mask):
            result |= 1 << self.images[i]
        return result


class Cover:
    """闭包空间的有限覆盖族"""

    __slots__ = ("space", "parts", "masks")

    def __init__(self, space: FiniteClosureSpace, parts: Iterable[Iterable[Point]]):
        self.space = space
        self.parts = tuple(frozenset(part) for part in parts)
        self.masks = tuple(space.mask_of(part) for part in self.parts)

    def __repr__(self) -> str:
        return f"Cover({[space_sorted(self.space, part) for part in self.parts]})"


class SpacePair:
    """空间对 (X, A)；子空间闭包为 c_A(B) = c(B) ∩ A"""

    __slots__ = ("ambient", "subspace_points", "mask")

    def __init__(self, ambient: FiniteClosureSpace, subspace_points: Iterable[Point]):
        self.ambient = ambient
        self.subspace_points = frozenset(subspace_points)
        self.mask = ambient.mask_of(self.subspace_points)

    def __repr__(self) -> str:
        return f"SpacePair(A={space_sorted(self.ambient, self.subspace_points)})"


def space_sorted(space: FiniteClosureSpace, subset: Iterable[Point]) -> List[Point]:
    """按空间的点序排列子集"""
    return space.ordered(space.mask_of(subset))
