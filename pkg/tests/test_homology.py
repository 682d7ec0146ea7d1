import networkx as nx
import numpy as np
import pytest
from sympy import Matrix

from closure_homology.core.exceptions import InputError, UnsupportedTheoryError
from closure_homology.models.space import SpaceMap, SpacePair
from closure_homology.models.theory import Coefficients, INTEGERS, RATIONALS, ProductKind, all_selectors
from closure_homology.services import chains, corpus, homology, homotopy, spaces
from closure_homology.services.homology import HomologyGroup
from closure_homology.utils.snf import int_dot

from conftest import (
    CROSS_SELECTORS, J1_BOX_CUBICAL, J1_CROSS_CUBICAL, J1_SIMPLICIAL, JPLUS_BOX_CUBICAL, JPLUS_CROSS_CUBICAL,
    JPLUS_SIMPLICIAL,
)

Z = HomologyGroup(betti=1)
ZERO = HomologyGroup()
Z2 = Coefficients.mod(2)


def _torsion_complex():
    """ℤ --×2--> ℤ：H₀ = ℤ/2，H₁ = 0"""
    return chains.ChainComplex.from_matrices([1, 1], {1: [[2]]})


@pytest.mark.parametrize("selector", all_selectors(), ids=lambda s: s.label)
def test_boundary_squares_to_zero(selector):
    for k in range(8):
        rng = corpus.instance_rng(31, k)
        space = corpus.random_space(rng, corpus.random_size(rng, 2, 4))
        for normalize in (True, False):
            complex_ = chains.chain_complex(space, selector, 1, normalize=normalize)
            assert complex_.is_complex()
            assert complex_.augment().is_complex()


@pytest.mark.parametrize("selector", all_selectors(), ids=lambda s: s.label)
def test_point_is_acyclic(selector, point):
    groups = homology.space_homology(point, selector, 3)
    assert groups[0] == Z
    assert all(g.is_trivial for g in groups[1:])
    reduced = homology.space_homology(point, selector, 3, reduced=True)
    assert all(g.is_trivial for g in reduced)
    complex_ = chains.chain_complex(point, selector, 3, augmented=True)
    assert all(homology.cohomology(complex_, n).is_trivial for n in range(4))


@pytest.mark.parametrize("selector", all_selectors(), ids=lambda s: s.label)
def test_h0_counts_path_components(selector):
    for k in range(50):
        rng = corpus.instance_rng(32, k)
        space = corpus.random_space(rng, corpus.random_size(rng, 1, 5))
        h0 = homology.space_homology(space, selector, 0)[0]
        assert h0 == HomologyGroup(betti=homotopy.pi0(space, selector.interval).count)


def test_cycle_homology(c4, c5):
    assert homology.space_homology(c4, J1_SIMPLICIAL, 1) == [Z, Z]
    assert homology.space_homology(c5, J1_SIMPLICIAL, 1) == [Z, Z]
    assert homology.space_homology(c4, J1_CROSS_CUBICAL, 1) == [Z, Z]
    assert homology.space_homology(c4, J1_BOX_CUBICAL, 1) == [Z, ZERO]


def test_interval_homology():
    assert homology.space_homology(spaces.J1, J1_SIMPLICIAL, 1) == [Z, ZERO]
    # J₁ 看不到 J₊ 的非对称边
    assert homology.space_homology(spaces.JPLUS, J1_SIMPLICIAL, 1)[0] == HomologyGroup(betti=2)
    assert homology.space_homology(spaces.JPLUS, JPLUS_SIMPLICIAL, 1) == [Z, ZERO]
    assert homology.space_homology(spaces.discrete_space(3), J1_CROSS_CUBICAL, 1) == [HomologyGroup(betti=3), ZERO]


@pytest.mark.parametrize("n", [1, 2])
def test_powers_of_interval_are_acyclic(n):
    cube = spaces.power(spaces.J1, n, ProductKind.CROSS)
    for selector in (J1_SIMPLICIAL, J1_CROSS_CUBICAL):
        assert all(g.is_trivial for g in homology.space_homology(cube, selector, 1, reduced=True))
    simplex = spaces.standard_space("J_le", n)
    for selector in (JPLUS_SIMPLICIAL, JPLUS_CROSS_CUBICAL):
        assert all(g.is_trivial for g in homology.space_homology(simplex, selector, 1, reduced=True))


ACYCLIC_CASES = [
    (spaces.power(spaces.J1, 2, ProductKind.INDUCTIVE), J1_BOX_CUBICAL, 2, INTEGERS),
    (spaces.power(spaces.J1, 3, ProductKind.INDUCTIVE), J1_BOX_CUBICAL, 1, INTEGERS),
    (spaces.power(spaces.J1, 3, ProductKind.INDUCTIVE), J1_BOX_CUBICAL, 2, Z2),
    (spaces.power(spaces.JPLUS, 2, ProductKind.INDUCTIVE), JPLUS_BOX_CUBICAL, 2, INTEGERS),
    (spaces.power(spaces.JPLUS, 3, ProductKind.INDUCTIVE), JPLUS_BOX_CUBICAL, 2, INTEGERS),
    (spaces.power(spaces.JPLUS, 3, ProductKind.CROSS), JPLUS_BOX_CUBICAL, 2, Z2),
    (spaces.power(spaces.JPLUS, 3, ProductKind.CROSS), JPLUS_CROSS_CUBICAL, 2, Z2),
    (spaces.power(spaces.J1, 3, ProductKind.CROSS), J1_SIMPLICIAL, 1, INTEGERS),
    (spaces.standard_space("J_le", 3), JPLUS_BOX_CUBICAL, 2, INTEGERS),
    (spaces.standard_space("J_le", 3), JPLUS_SIMPLICIAL, 2, INTEGERS),
    (spaces.standard_space("J_top", 3), J1_BOX_CUBICAL, 1, INTEGERS),
    (spaces.standard_space("J_top", 3), J1_SIMPLICIAL, 2, INTEGERS),
]


@pytest.mark.parametrize("space, selector, max_dim, coefficients", ACYCLIC_CASES,
                         ids=[f"{len(c[0])}pts-{c[1].label}-{c[2]}-{c[3].label}" for c in ACYCLIC_CASES])
def test_contractible_models_are_acyclic(space, selector, max_dim, coefficients):
    # 8 点的三维情形在 ℤ 上的 Smith 变换矩阵过大，改用 𝔽₂
    reduced = homology.space_homology(space, selector, max_dim, coefficients, reduced=True)
    assert len(reduced) == max_dim + 1
    assert all(g.is_trivial for g in reduced)


def _clique_betti(space, top):
    """networkx 团复形 + sympy 秩给出的参照 Betti 数"""
    graph = nx.Graph()
    graph.add_nodes_from(range(len(space)))
    graph.add_edges_from((i, j) for i in range(len(space)) for j in range(i + 1, len(space))
                         if space.adjacent(i, j) and space.adjacent(j, i))
    cells = {n: [] for n in range(top + 2)}
    for clique in nx.enumerate_all_cliques(graph):
        if len(clique) - 1 <= top + 1:
            cells[len(clique) - 1].append(tuple(sorted(clique)))
    ranks = {}
    for n in range(1, top + 2):
        index = {c: k for k, c in enumerate(cells[n - 1])}
        matrix = [[0] * len(cells[n]) for _ in cells[n - 1]]
        for col, c in enumerate(cells[n]):
            for i in range(len(c)):
                matrix[index[c[:i] + c[i + 1:]]][col] += (-1) ** i
        ranks[n] = Matrix(matrix).rank() if cells[n] and cells[n - 1] else 0
    ranks[0] = 0
    return [len(cells[n]) - ranks[n] - ranks[n + 1] for n in range(top + 1)]


def test_symmetric_spaces_match_clique_complex():
    for k in range(50):
        rng = corpus.instance_rng(33, k)
        space = corpus.random_symmetric_space(rng, corpus.random_size(rng, 3, 7))
        groups = homology.space_homology(space, J1_SIMPLICIAL, 1)
        assert [g.betti for g in groups] == _clique_betti(space, 1)


def test_torsion_complex_and_coefficients():
    complex_ = _torsion_complex()
    assert homology.homology(complex_, 0) == HomologyGroup(torsion=(2,))
    assert homology.homology(complex_, 1) == ZERO
    assert homology.homology(complex_, 1, Coefficients.mod(2)).betti == 1
    assert homology.homology(complex_, 0, Coefficients.mod(2)).betti == 1
    assert homology.homology(complex_, 0, RATIONALS).betti == 0
    assert homology.cohomology(complex_, 0) == ZERO
    assert homology.cohomology(complex_, 1) == HomologyGroup(torsion=(2,))
    square = chains.tensor_complex(complex_, complex_)
    assert square.is_complex()
    assert homology.homology(square, 0) == HomologyGroup(torsion=(2,))
    assert homology.homology(square, 1) == HomologyGroup(torsion=(2,))


def test_group_algebra():
    z2 = HomologyGroup(torsion=(2,))
    z3 = HomologyGroup(torsion=(3,))
    assert homology.tensor(Z, z2) == z2
    assert homology.tensor(z2, z3) == ZERO
    assert homology.tor(z2, HomologyGroup(torsion=(4,))) == z2
    assert homology.tor(Z, z2) == ZERO
    assert homology.hom(z2, Z) == ZERO
    assert homology.ext(z2, Z) == z2
    assert homology.direct_sum(z2, z3) == HomologyGroup(torsion=(6,))
    assert str(HomologyGroup(betti=2, torsion=(2,))) == "Z^2 + Z/2"
    assert str(ZERO) == "0"
    with pytest.raises(UnsupportedTheoryError):
        homology.coefficient_group(RATIONALS)


def test_field_coefficients_on_cycle(c4):
    assert [g.betti for g in homology.space_homology(c4, J1_SIMPLICIAL, 1, Coefficients.mod(2))] == [1, 1]
    assert [g.betti for g in homology.space_homology(c4, J1_SIMPLICIAL, 1, RATIONALS)] == [1, 1]
    complex_ = chains.chain_complex(c4, J1_SIMPLICIAL, 1)
    assert homology.cohomology(complex_, 1) == Z


def test_generators_of_cycle(c4):
    complex_ = chains.chain_complex(c4, J1_SIMPLICIAL, 1)
    generators = homology.homology_generators(complex_, 1)
    assert len(generators) == 1
    vector, order = generators[0]
    assert order == 0
    assert not np.any(int_dot(complex_.boundary(1), vector.reshape(-1, 1)) != 0)


def test_homology_out_of_range():
    complex_ = chains.chain_complex(spaces.J1, J1_SIMPLICIAL, 1)
    with pytest.raises(InputError):
        homology.homology(complex_, 2)


def test_induced_maps(c4):
    complex_ = chains.chain_complex(c4, J1_SIMPLICIAL, 1)
    identity = chains.induced_chain_map(spaces.identity_map(c4), complex_, complex_)
    assert identity.is_chain_map()
    assert homology.induced_homology_map(identity, 1).is_isomorphism()
    constant = chains.induced_chain_map(spaces.constant_map(c4, c4, 0), complex_, complex_)
    assert constant.is_chain_map()
    assert homology.induced_homology_map(constant, 1).is_zero()
    flip = chains.induced_chain_map(SpaceMap(c4, c4, {0: 0, 1: 3, 2: 2, 3: 1}), complex_, complex_)
    induced = homology.induced_homology_map(flip, 1)
    assert induced.is_isomorphism()
    assert not induced.equals(homology.induced_homology_map(identity, 1))


def test_induced_chain_maps_compose():
    for k in range(6):
        rng = corpus.instance_rng(34, k)
        x = corpus.random_space(rng, 3)
        y = corpus.random_space(rng, 3)
        f = corpus.random_map(rng, x, y)
        g = corpus.random_map(rng, y, x)
        for selector in CROSS_SELECTORS:
            cx = chains.chain_complex(x, selector, 1)
            cy = chains.chain_complex(y, selector, 1)
            composed = chains.induced_chain_map(spaces.compose(g, f), cx, cx)
            stepwise = chains.induced_chain_map(g, cy, cx).compose(chains.induced_chain_map(f, cx, cy))
            for n in range(3):
                assert np.array_equal(composed.matrix(n), stepwise.matrix(n))


def test_relative_homology_of_interval_rel_endpoint():
    pair = SpacePair(spaces.standard_space("J_m", 2), [0, 2])
    complex_ = chains.relative_complex(pair, J1_SIMPLICIAL, 1)
    assert homology.homology(complex_, 1) == Z
    assert homology.relative_cohomology(pair, J1_SIMPLICIAL, INTEGERS, 1)[1] == Z


def test_cup_product_unit_and_leibniz(c5):
    complex_ = chains.chain_complex(c5, J1_SIMPLICIAL, 1)
    rng = np.random.default_rng(5)
    ones = [1] * complex_.rank(0)
    for _ in range(5):
        a = [int(x) for x in rng.integers(-3, 4, size=complex_.rank(0))]
        b = [int(x) for x in rng.integers(-3, 4, size=complex_.rank(1))]
        assert list(homology.cup_product(complex_, ones, 0, b, 1)) == b
        assert list(homology.cup_product(complex_, b, 1, ones, 0)) == b
        left = homology.coboundary_of(complex_, homology.cup_product(complex_, a, 0, b, 1), 1)
        right = (homology.cup_product(complex_, homology.coboundary_of(complex_, a, 0), 1, b, 1)
                 + homology.cup_product(complex_, a, 0, homology.coboundary_of(complex_, b, 1), 2))
        assert list(left) == list(right)


def test_cup_product_requires_simplicial(c4):
    complex_ = chains.chain_complex(c4, J1_CROSS_CUBICAL, 1)
    with pytest.raises(UnsupportedTheoryError):
        homology.cup_product(complex_, [0] * complex_.rank(0), 0, [0] * complex_.rank(0), 0)


def test_cocycles_mod_p(c4):
    complex_ = chains.chain_complex(c4, J1_SIMPLICIAL, 1)
    basis = homology.cocycle_basis_mod_p(complex_, 1, 2)
    delta = chains.dualize(complex_).coboundary(1)
    assert not np.any((delta @ basis) % 2)
    coboundary = homology.coboundary_of(complex_, [1, 0, 0, 0], 0, Coefficients.mod(2))
    assert homology.is_coboundary_mod_p(complex_, coboundary, 1, 2)


@pytest.mark.parametrize("space, selector", [
    (spaces.cycle_space(4), J1_SIMPLICIAL),
    (spaces.cycle_space(5), J1_SIMPLICIAL),
    (spaces.cycle_space(6), J1_SIMPLICIAL),
    (spaces.power(spaces.J1, 2, ProductKind.INDUCTIVE), J1_SIMPLICIAL),
    (spaces.power(spaces.JPLUS, 2, ProductKind.CROSS), JPLUS_SIMPLICIAL),
    (spaces.power(spaces.JPLUS, 2, ProductKind.INDUCTIVE), JPLUS_SIMPLICIAL),
], ids=["C4", "C5", "C6", "J1-box-J1", "J+xJ+", "J+-box-J+"])
def test_cup_product_commutes_mod_2_in_cohomology(space, selector):
    complex_ = chains.chain_complex(space, selector, 1)
    bases = {n: homology.cocycle_basis_mod_p(complex_, n, 2) for n in (0, 1)}
    assert bases[1].shape[1] > 0
    for p, q in [(0, 0), (0, 1), (1, 0), (1, 1)]:
        for i in range(bases[p].shape[1]):
            for j in range(bases[q].shape[1]):
                a = [int(x) for x in bases[p][:, i]]
                b = [int(x) for x in bases[q][:, j]]
                ab = homology.cup_product(complex_, a, p, b, q, Z2)
                ba = homology.cup_product(complex_, b, q, a, p, Z2)
                difference = [(int(x) - int(y)) % 2 for x, y in zip(ab, ba)]
                assert homology.is_coboundary_mod_p(complex_, difference, p + q, 2)


def test_normalized_complex_agrees(c4):
    for selector in (J1_SIMPLICIAL, J1_CROSS_CUBICAL):
        normalized = chains.normalized_complex(c4, selector, 1)
        assert normalized.is_complex()
        assert homology.homology_table(normalized) == [Z, Z]
    assert homology.space_homology(c4, J1_SIMPLICIAL, 1, normalize=False) == [Z, Z]


@pytest.mark.parametrize("selector", all_selectors(), ids=lambda s: s.label)
def test_hexagon_homology_in_every_theory(selector, c6):
    assert homology.space_homology(c6, selector, 2) == [Z, Z, ZERO]
