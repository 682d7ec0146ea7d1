import json

import pytest

from closure_homology.models.space import Cover
from closure_homology.models.theory import Flavor, Interval, ProductKind, TheorySelector
from closure_homology.services import corpus, spaces

J1_SIMPLICIAL = TheorySelector(interval=Interval.J1, flavor=Flavor.SIMPLICIAL)
JPLUS_SIMPLICIAL = TheorySelector(interval=Interval.JPLUS, flavor=Flavor.SIMPLICIAL)
J1_CROSS_CUBICAL = TheorySelector(interval=Interval.J1, product=ProductKind.CROSS, flavor=Flavor.CUBICAL)
J1_BOX_CUBICAL = TheorySelector(interval=Interval.J1, product=ProductKind.INDUCTIVE, flavor=Flavor.CUBICAL)
JPLUS_CROSS_CUBICAL = TheorySelector(interval=Interval.JPLUS, product=ProductKind.CROSS, flavor=Flavor.CUBICAL)
JPLUS_BOX_CUBICAL = TheorySelector(interval=Interval.JPLUS, product=ProductKind.INDUCTIVE, flavor=Flavor.CUBICAL)

CROSS_SELECTORS = [J1_SIMPLICIAL, JPLUS_SIMPLICIAL, J1_CROSS_CUBICAL, JPLUS_CROSS_CUBICAL]


@pytest.fixture
def point():
    return spaces.point_space()


@pytest.fixture
def c4():
    return spaces.cycle_space(4)


@pytest.fixture
def c5():
    return spaces.cycle_space(5)


@pytest.fixture
def c6():
    return spaces.cycle_space(6)


@pytest.fixture
def box_square():
    """J₊⊡J₊ 及其一个内部覆盖"""
    square = spaces.power(spaces.JPLUS, 2, ProductKind.INDUCTIVE)
    cover = Cover(square, [
        [(0, 0)],
        [(0, 0), (1, 0)],
        [(0, 0), (0, 1)],
        [(0, 1), (1, 1), (1, 0)],
    ])
    return square, cover


@pytest.fixture
def small_spaces():
    """固定种子的小随机空间"""
    return corpus.spaces_corpus(seed=7, count=12, low=2, high=4)


@pytest.fixture
def write_json(tmp_path):
    """把对象写成 tmp_path 下的 JSON 文件并返回路径"""
    def _write(name, data):
        path = tmp_path / name
        path.write_text(json.dumps(data, ensure_ascii=False), encoding="utf-8")
        return str(path)
    return _write
