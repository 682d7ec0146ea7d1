import itertools

import pytest

from closure_homology.core.exceptions import InputError, NonFinitaryTheoryError, ResourceLimitError
from closure_homology.models.theory import Interval, ProductKind, TheorySelector, all_selectors
from closure_homology.services import corpus, nerves, spaces

from conftest import J1_BOX_CUBICAL, J1_CROSS_CUBICAL, J1_SIMPLICIAL, JPLUS_SIMPLICIAL


@pytest.mark.parametrize("selector", all_selectors(), ids=lambda s: s.label)
def test_enumeration_matches_brute_force(selector):
    for k in range(6):
        rng = corpus.instance_rng(21, k)
        space = corpus.random_space(rng, corpus.random_size(rng, 2, 3), density=0.5)
        nerve = nerves.Nerve(space, selector)
        for n in range(3):
            assert nerve.cells(n) == nerves.brute_force_cells(space, selector, n)


@pytest.mark.parametrize("selector", all_selectors(), ids=lambda s: s.label)
def test_characterizations_match_definition(selector):
    for k in range(4):
        rng = corpus.instance_rng(22, k)
        space = corpus.random_space(rng, 3, density=0.5)
        size = 3 if selector.is_simplicial else 4
        for cell in itertools.product(range(3), repeat=size):
            if selector.is_simplicial:
                expected = nerves.is_continuous_simplex(space, cell, selector.interval)
                assert bool(nerves.simplex_characterization(space, cell, selector.interval)) == expected
            else:
                expected = nerves.is_continuous_cube(space, cell, selector.interval, selector.product)
                assert nerves.cube_characterization(space, cell, selector.interval, selector.product) == expected


def test_simplex_operators():
    assert nerves.simplex_face((4, 5, 6), 1) == (4, 6)
    assert nerves.simplex_degeneracy((4, 5), 0) == (4, 4, 5)
    assert nerves.is_degenerate_simplex((1, 1, 2))
    assert not nerves.is_degenerate_simplex((1, 2, 1))
    with pytest.raises(InputError):
        nerves.simplex_face((3,), 0)


def test_simplicial_identities():
    s = (0, 1, 2, 3, 4)
    n = len(s) - 1
    for j in range(n + 1):
        for i in range(j):
            assert nerves.simplex_face(nerves.simplex_face(s, j), i) == \
                nerves.simplex_face(nerves.simplex_face(s, i), j - 1)
    for j in range(n + 1):
        assert nerves.simplex_face(nerves.simplex_degeneracy(s, j), j) == s
        assert nerves.simplex_face(nerves.simplex_degeneracy(s, j), j + 1) == s


def test_cube_faces_of_an_edge_and_square():
    assert nerves.cube_face((7, 8), 1, 0) == (7,)
    assert nerves.cube_face((7, 8), 1, 1) == (8,)
    square = (0, 1, 2, 3)  # 角点 00、10、01、11
    assert nerves.cube_face(square, 1, 0) == (0, 2)
    assert nerves.cube_face(square, 1, 1) == (1, 3)
    assert nerves.cube_face(square, 2, 0) == (0, 1)
    assert nerves.cube_face(square, 2, 1) == (2, 3)


def test_cubical_identities():
    q = tuple(range(8))
    n = 3
    for j in range(1, n + 1):
        for i in range(1, j):
            for eps, delta in itertools.product((0, 1), repeat=2):
                left = nerves.cube_face(nerves.cube_face(q, j, delta), i, eps)
                right = nerves.cube_face(nerves.cube_face(q, i, eps), j - 1, delta)
                assert left == right
    for i in range(1, n + 2):
        degenerate = nerves.cube_degeneracy(q, i)
        assert nerves.is_degenerate(degenerate)
        assert nerves.cube_face(degenerate, i, 0) == q
        assert nerves.cube_face(degenerate, i, 1) == q
    assert not nerves.is_degenerate(q)


def test_connection_identities():
    q = tuple(range(4))
    n = 2
    for i in range(1, n + 1):
        for eps in (0, 1):
            gamma = nerves.cube_connection(q, i, eps)
            assert nerves.cube_face(gamma, i, eps) == q
            assert nerves.cube_face(gamma, i + 1, eps) == q
            for j in range(i + 1, n + 1):
                for delta in (0, 1):
                    left = nerves.cube_connection(nerves.cube_connection(q, j, delta), i, eps)
                    right = nerves.cube_connection(nerves.cube_connection(q, i, eps), j + 1, delta)
                    assert left == right


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_comparison_map_face_relations(n):
    s = tuple(10 + k for k in range(n + 1))
    f = nerves.comparison_map(s)
    for i in range(n):
        assert nerves.comparison_map(nerves.simplex_face(s, i)) == nerves.cube_face(f, i + 1, 1)
    assert nerves.comparison_map(nerves.simplex_face(s, n)) == nerves.cube_face(f, n, 0)


def test_comparison_map_lands_in_cross_cubes():
    space = spaces.standard_space("J_le", 3)
    for interval in Interval.J1, Interval.JPLUS:
        simplicial = TheorySelector(interval=interval)
        for n in range(3):
            for s in nerves.Nerve(space, simplicial).cells(n):
                assert nerves.is_continuous_cube(space, nerves.comparison_map(s), interval, ProductKind.CROSS)


def test_identity_cells_are_continuous():
    for n in range(4):
        for interval in Interval.J1, Interval.JPLUS:
            model = nerves.model_simplex(n, interval)
            assert nerves.is_continuous_simplex(model, nerves.simplex_identity(n, interval), interval)
            for product in ProductKind:
                cube, _ = nerves.model_cube(n, interval, product)
                assert nerves.is_continuous_cube(cube, nerves.cube_identity(n, interval, product), interval, product)


def test_postcompose_with_constant_is_degenerate():
    c4 = spaces.cycle_space(4)
    constant = spaces.constant_map(c4, c4, 2)
    for cube in nerves.Nerve(c4, J1_CROSS_CUBICAL).cells(2):
        image = nerves.postcompose(cube, constant)
        assert nerves.is_degenerate(image)


def test_cycle_nerve_counts():
    c4 = spaces.cycle_space(4)
    # 每点与自身及两个邻点双向相邻
    assert len(nerves.enumerate_simplices(c4, J1_SIMPLICIAL, 1)) == 12
    assert len(nerves.enumerate_cubes(c4, J1_CROSS_CUBICAL, 1)) == 12
    # ⊡ 下 C₄ 本身就是一个非退化 2 立方体
    box_squares = nerves.enumerate_cubes(c4, J1_BOX_CUBICAL, 2)
    assert (0, 1, 3, 2) in box_squares
    assert (0, 1, 3, 2) not in nerves.enumerate_cubes(c4, J1_CROSS_CUBICAL, 2)


def test_jplus_simplices_follow_closure_direction():
    jplus = spaces.JPLUS
    assert nerves.enumerate_simplices(jplus, JPLUS_SIMPLICIAL, 1) == [(0, 0), (0, 1), (1, 1)]
    assert nerves.enumerate_simplices(jplus, J1_SIMPLICIAL, 1) == [(0, 0), (1, 1)]


def test_enumeration_limits():
    c4 = spaces.cycle_space(4)
    with pytest.raises(ResourceLimitError):
        nerves.Nerve(c4, J1_SIMPLICIAL, cap=5).cells(1)
    with pytest.raises(ResourceLimitError):
        nerves.Nerve(c4, J1_SIMPLICIAL, max_dim=1).cells(2)
    with pytest.raises(InputError):
        nerves.enumerate_cubes(c4, J1_SIMPLICIAL, 1)


def test_box_cubes_on_eight_points():
    rng = corpus.instance_rng(24, 0)
    space = corpus.random_space(rng, 8, density=0.5)
    nerve = nerves.Nerve(space, J1_BOX_CUBICAL)
    squares = set(nerve.cells(2))
    cubes = nerve.cells(3)
    assert len(cubes) >= len(space)
    for q in cubes:
        assert nerves.is_continuous_cube(space, q, Interval.J1, ProductKind.INDUCTIVE)
        for i in range(1, 4):
            for eps in (0, 1):
                assert nerves.cube_face(q, i, eps) in squares

    box = spaces.power(spaces.J1, 3, ProductKind.INDUCTIVE)
    cubes = nerves.enumerate_cubes(box, J1_BOX_CUBICAL, 3)
    assert tuple(range(8)) in cubes
    assert (0, 7, 0, 7, 0, 7, 0, 7) not in cubes


def test_simplicial_nerve_does_not_depend_on_product(c4):
    for interval in Interval.J1, Interval.JPLUS:
        cross = TheorySelector(interval=interval, product=ProductKind.CROSS)
        box = TheorySelector(interval=interval, product=ProductKind.INDUCTIVE)
        assert box.is_simplicial and not box.is_cross
        assert box.label == f"({interval.value},inductive,simplicial)"
        for n in range(3):
            assert nerves.Nerve(c4, box).cells(n) == nerves.Nerve(c4, cross).cells(n)
    with pytest.raises(NonFinitaryTheoryError):
        TheorySelector(interval=Interval.I, product=ProductKind.INDUCTIVE)
