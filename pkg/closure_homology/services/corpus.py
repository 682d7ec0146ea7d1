"""
可复现的随机语料

所有实例都由 (种子, 序号) 派生的 numpy 随机数生成器产生，与并行度无关。
"""

import logging
from typing import List, Optional, Tuple

import numpy as np

from closure_homology.core.config import settings
from closure_homology.models.space import Cover, FiniteClosureSpace, SpaceMap, SpacePair, iter_bits
from closure_homology.models.theory import Interval, ProductKind
from closure_homology.services import homotopy

logger = logging.getLogger(__name__)


def instance_rng(seed: Optional[int], k: int) -> np.random.Generator:
    """第 k 个实例的随机数生成器"""
    seed = settings.DEFAULT_SEED if seed is None else seed
    return np.random.default_rng([seed, k])


def random_space(rng: np.random.Generator, n_points: int, density: float = 0.35) -> FiniteClosureSpace:
    """点为 0..n-1，每个有序对以概率 density 进入闭包关系"""
    relation = rng.random((n_points, n_points)) < density
    masks = []
    for i in range(n_points):
        mask = 1 << i
        for j in np.nonzero(relation[i])[0]:
            mask |= 1 << int(j)
        masks.append(mask)
    return FiniteClosureSpace.from_masks(range(n_points), masks)


def random_symmetric_space(rng: np.random.Generator, n_points: int, density: float = 0.5) -> FiniteClosureSpace:
    """自反对称图，即 J₁ 单纯理论下的团复形"""
    upper = np.triu(rng.random((n_points, n_points)) < density, k=1)
    relation = upper | upper.T
    masks = [(1 << i) | sum(1 << int(j) for j in np.nonzero(relation[i])[0]) for i in range(n_points)]
    return FiniteClosureSpace.from_masks(range(n_points), masks)


def random_size(rng: np.random.Generator, low: int, high: int) -> int:
    return int(rng.integers(low, high + 1))


def random_subset(rng: np.random.Generator, space: FiniteClosureSpace, nonempty: bool = True) -> frozenset:
    while True:
        mask = int(sum(1 << i for i in range(len(space)) if rng.random() < 0.5))
        if mask or not nonempty or not len(space):
            return space.points_of(mask)


def random_pair(rng: np.random.Generator, space: FiniteClosureSpace) -> SpacePair:
    return SpacePair(space, random_subset(rng, space))


def random_interior_cover(rng: np.random.Generator, space: FiniteClosureSpace) -> Cover:
    """
    两部分的内部覆盖 {A, B}

    先随机取 A，再让 B 包含所有不在 i(A) 中的点的最小邻域，从而 i(A) ∪ i(B) = X。
    """
    a_mask = space.mask_of(random_subset(rng, space))
    inner = space.interior_mask(a_mask)
    b_mask = 0
    for i in iter_bits(space.full_mask & ~inner):
        b_mask |= space.neighborhood_masks[i]
    b_mask |= space.mask_of(random_subset(rng, space, nonempty=False))
    if not b_mask:
        b_mask = a_mask
    return Cover(space, [space.points_of(a_mask), space.points_of(b_mask)])


def random_excision_triple(rng: np.random.Generator, space: FiniteClosureSpace) -> Tuple[frozenset, frozenset]:
    """(A, Z)，Z 取自所有单点闭包落在 i(A) 中的点"""
    a = random_subset(rng, space)
    inner = space.interior_mask(space.mask_of(a))
    admissible = [i for i, closure in enumerate(space.closure_masks) if closure & ~inner == 0]
    z_mask = sum(1 << i for i in admissible if rng.random() < 0.6)
    return a, space.points_of(z_mask)


def random_map(rng: np.random.Generator, source: FiniteClosureSpace, target: FiniteClosureSpace,
               cap: int = 2000) -> Optional[SpaceMap]:
    """从前 cap 个连续映射中随机取一个"""
    maps = homotopy.enumerate_maps(source, target, cap)
    if not maps:
        return None
    return maps[int(rng.integers(len(maps)))]


def homotopic_pair(rng: np.random.Generator, source: FiniteClosureSpace, target: FiniteClosureSpace,
                   interval: Interval, product: ProductKind, walk: int = 3,
                   budget: Optional[int] = None) -> Optional[homotopy.HomotopyResult]:
    """
    随机游走若干个一步同伦得到 g，再由搜索给出 f ∼ g 的见证

    Returns:
        带见证的搜索结果；没有连续映射时返回 None
    """
    f = random_map(rng, source, target)
    if f is None:
        return None
    search = homotopy.HomotopySearch(source, target, interval, product)
    images = f.images
    for _ in range(walk):
        options = search.neighbors(images)
        if not options:
            break
        images = options[int(rng.integers(len(options)))][0]
    g = SpaceMap.from_indices(source, target, images)
    return homotopy.are_homotopic(f, g, interval, product, budget)


def spaces_corpus(seed: Optional[int], count: int, low: int = 2, high: int = 5) -> List[FiniteClosureSpace]:
    result = []
    for k in range(count):
        rng = instance_rng(seed, k)
        result.append(random_space(rng, random_size(rng, low, high)))
    logger.debug(f"生成 {count} 个随机空间 (种子 {seed})")
    return result


def pairs_corpus(seed: Optional[int], count: int, low: int = 2, high: int = 4) -> List[SpacePair]:
    result = []
    for k in range(count):
        rng = instance_rng(seed, k)
        result.append(random_pair(rng, random_space(rng, random_size(rng, low, high))))
    return result
