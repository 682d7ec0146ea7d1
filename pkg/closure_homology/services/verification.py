"""
定理验证工具

对具体实例检查长正合列、Mayer-Vietoris、切除、比较定理、棱柱同伦、Künneth、
Eilenberg-Zilber、泛系数定理、Eilenberg-Steenrod 公理、好对以及正规化。
每个检查返回一个 VerificationReport；× 理论下断言成立，⊡ 理论下只报告发现(experimental)。
"""

import logging
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from closure_homology.core.exceptions import InputError, UnsupportedTheoryError
from closure_homology.models.schemas import VerificationReport
from closure_homology.models.space import Cover, FiniteClosureSpace, Point, SpaceMap, SpacePair
from closure_homology.models.theory import (
    Coefficients, Flavor, Interval, ProductKind, Ring, TheorySelector,
)
from closure_homology.services import chains, homology, homotopy, nerves, spaces
from closure_homology.services.chains import ChainComplex, selection_map
from closure_homology.services.homology import HomologyGroup, Subquotient, cycle_map, is_exact_at
from closure_homology.utils.snf import int_dot

logger = logging.getLogger(__name__)


def _zero() -> Subquotient:
    empty = np.zeros((0, 0), dtype=np.int64)
    return homology.subquotient(empty, empty, 0)


def _describe(space: FiniteClosureSpace, **subsets: Iterable[Point]) -> str:
    parts = [f"|X|={len(space)}"]
    for name, subset in subsets.items():
        names = [spaces.format_point(p) for p in spaces.space_sorted(space, subset)]
        parts.append(f"{name}={{{','.join(names)}}}")
    return " ".join(parts)


def _asserted(selector: TheorySelector) -> bool:
    """单纯理论与 × 立方理论断言；⊡ 立方理论只做实验"""
    return selector.is_simplicial or selector.is_cross


def _status(ok: bool, asserted: bool) -> str:
    if not asserted:
        return "experimental"
    return "verified" if ok else "refuted"


def _finish(report: VerificationReport) -> VerificationReport:
    if report.status == "refuted":
        logger.error(f"{report.theorem} 在 {report.selector} 下被反驳: {report.instance}")
    elif report.status == "experimental":
        logger.warning(f"{report.theorem} 在 {report.selector} 下为实验结果: {report.details}")
    else:
        logger.info(f"{report.theorem} {report.selector}: {report.status}")
    return report


def _sequence_exactness(nodes: List[Tuple[str, Subquotient]], maps: List[np.ndarray]) -> Dict[str, bool]:
    """maps[k]: nodes[k] → nodes[k+1]；检查除首尾外每个节点处的正合性"""
    result = {}
    for k in range(1, len(nodes) - 1):
        name, middle = nodes[k]
        result[name] = is_exact_at(maps[k - 1], middle, maps[k], nodes[k + 1][1])
    return result


def _nerve(space: FiniteClosureSpace, selector: TheorySelector) -> nerves.Nerve:
    return nerves.Nerve(space, selector)


# ----------------------------------------------------------------------
# 长正合列
# ----------------------------------------------------------------------

def les_of_pair_check(pair: SpacePair, selector: TheorySelector, max_dim: int) -> VerificationReport:
    """
    Hₙ(A) → Hₙ(X) → Hₙ(X,A) → Hₙ₋₁(A) 的正合性

    连接同态由链代表元构造：相对闭链按基提升到 C(X)，取边界后落在 C(A) 中。
    """
    nerve = _nerve(pair.ambient, selector)
    c_a = chains.subspace_complex(pair, selector, max_dim, nerve=nerve)
    c_x = chains.nerve_complex(nerve, max_dim)
    c_r = chains.relative_complex(pair, selector, max_dim, nerve=nerve)
    include = selection_map(c_a, c_x)
    project = selection_map(c_x, c_r)
    lift = selection_map(c_r, c_x)
    restrict = selection_map(c_x, c_a)

    h_a = {n: homology.homology_subquotient(c_a, n) for n in range(max_dim + 1)}
    h_x = {n: homology.homology_subquotient(c_x, n) for n in range(max_dim + 1)}
    h_r = {n: homology.homology_subquotient(c_r, n) for n in range(max_dim + 1)}

    nodes: List[Tuple[str, Subquotient]] = []
    maps: List[np.ndarray] = []
    for n in range(max_dim, -1, -1):
        nodes.append((f"H{n}(A)", h_a[n]))
        maps.append(cycle_map(h_a[n], h_x[n], include.matrix(n)))
        nodes.append((f"H{n}(X)", h_x[n]))
        maps.append(cycle_map(h_x[n], h_r[n], project.matrix(n)))
        nodes.append((f"H{n}(X,A)", h_r[n]))
        if n > 0:
            connecting = int_dot(restrict.matrix(n - 1), int_dot(c_x.boundary(n), lift.matrix(n)))
            maps.append(cycle_map(h_r[n], h_a[n - 1], connecting))
    zero = _zero()
    maps.append(np.zeros((0, h_r[0].cycle_rank), dtype=np.int64))
    nodes.append(("0", zero))

    exact = _sequence_exactness(nodes, maps)
    ok = all(exact.values())
    details = {
        "exact": exact,
        "H(A)": [str(h_a[n].group) for n in range(max_dim + 1)],
        "H(X)": [str(h_x[n].group) for n in range(max_dim + 1)],
        "H(X,A)": [str(h_r[n].group) for n in range(max_dim + 1)],
    }
    return _finish(VerificationReport(theorem="les", selector=selector.label,
                                      instance=_describe(pair.ambient, A=pair.subspace_points),
                                      status="verified" if ok else "refuted", details=details))


# ----------------------------------------------------------------------
# 内部覆盖与 Mayer-Vietoris
# ----------------------------------------------------------------------

def cover_subcomplex_check(space: FiniteClosureSpace, cover: Cover, selector: TheorySelector,
                           max_dim: int) -> VerificationReport:
    """C^𝒰(X) 是否等于 C(X)；× 理论下必须相等，⊡ 理论下可能不等"""
    result = chains.interior_cover_subcomplex(space, cover, selector, max_dim)
    escaping = {str(n): [nerves.format_cell(space, c) for c in cells[:5]]
                for n, cells in result.escaping.items()}
    details = {"equal": result.equal, "escaping": escaping,
               "ranks": result.complex.ranks()}
    status = _status(result.equal, _asserted(selector))
    return _finish(VerificationReport(theorem="cover-subcomplex", selector=selector.label,
                                      instance=f"{_describe(space)} parts={len(cover.parts)}",
                                      status=status, details=details))


def mayer_vietoris_check(space: FiniteClosureSpace, a: Iterable[Point], b: Iterable[Point],
                         selector: TheorySelector, max_dim: int) -> VerificationReport:
    """
    Hₙ(A∩B) → Hₙ(A)⊕Hₙ(B) → Hₙ(X) → Hₙ₋₁(A∩B)

    序列在覆盖子复形 C^𝒰 上构造，φ(x)=(x,−x)，ψ(x,y)=x+y；连接同态把 C^𝒰 中的闭链
    按基拆成 A 部分(像落在 A 中的元素)与其余部分，取 A 部分的边界。
    另外检查包含 C^𝒰 → C(X) 是否诱导同构，从而序列中的 Hₙ(X) 是真正的同调。
    """
    a, b = frozenset(a), frozenset(b)
    cover = Cover(space, [a, b])
    if not spaces.is_interior_cover(cover):
        raise InputError(f"{{A, B}} 不是内部覆盖: {_describe(space, A=a, B=b)}")
    nerve = _nerve(space, selector)
    c_ab = chains.subspace_complex(SpacePair(space, a & b), selector, max_dim, nerve=nerve)
    c_a = chains.subspace_complex(SpacePair(space, a), selector, max_dim, nerve=nerve)
    c_b = chains.subspace_complex(SpacePair(space, b), selector, max_dim, nerve=nerve)
    cover_part = chains.interior_cover_subcomplex(space, cover, selector, max_dim, nerve=nerve)
    c_u = cover_part.complex
    c_x = chains.nerve_complex(nerve, max_dim)
    c_sum = chains.direct_sum(c_a, c_b)

    to_a, to_b = selection_map(c_ab, c_a), selection_map(c_ab, c_b)
    from_a, from_b = selection_map(c_a, c_u), selection_map(c_b, c_u)
    split = selection_map(c_u, c_a)
    back = selection_map(c_a, c_ab)
    into_x = selection_map(c_u, c_x)

    h_ab = {n: homology.homology_subquotient(c_ab, n) for n in range(max_dim + 1)}
    h_sum = {n: homology.homology_subquotient(c_sum, n) for n in range(max_dim + 1)}
    h_u = {n: homology.homology_subquotient(c_u, n) for n in range(max_dim + 1)}

    nodes: List[Tuple[str, Subquotient]] = []
    maps: List[np.ndarray] = []
    for n in range(max_dim, -1, -1):
        phi = np.vstack([to_a.matrix(n), -to_b.matrix(n)])
        psi = np.hstack([from_a.matrix(n), from_b.matrix(n)])
        nodes.append((f"H{n}(A∩B)", h_ab[n]))
        maps.append(cycle_map(h_ab[n], h_sum[n], phi))
        nodes.append((f"H{n}(A)⊕H{n}(B)", h_sum[n]))
        maps.append(cycle_map(h_sum[n], h_u[n], psi))
        nodes.append((f"H{n}(X)", h_u[n]))
        if n > 0:
            connecting = int_dot(back.matrix(n - 1), int_dot(c_a.boundary(n), split.matrix(n)))
            maps.append(cycle_map(h_u[n], h_ab[n - 1], connecting))
    maps.append(np.zeros((0, h_u[0].cycle_rank), dtype=np.int64))
    nodes.append(("0", _zero()))
    exact = _sequence_exactness(nodes, maps)

    cover_iso = {}
    for n in range(max_dim + 1):
        cover_iso[str(n)] = homology.induced_homology_map(into_x, n).is_isomorphism()

    ok = all(exact.values()) and all(cover_iso.values())
    details = {
        "exact": exact,
        "cover_subcomplex_equal": cover_part.equal,
        "cover_homology_isomorphic": cover_iso,
        "H(X)": [str(homology.homology(c_x, n)) for n in range(max_dim + 1)],
        "H(A∩B)": [str(h_ab[n].group) for n in range(max_dim + 1)],
    }
    return _finish(VerificationReport(theorem="mv", selector=selector.label,
                                      instance=_describe(space, A=a, B=b),
                                      status=_status(ok, _asserted(selector)), details=details))


# ----------------------------------------------------------------------
# 切除
# ----------------------------------------------------------------------

def check_excision_triple(space: FiniteClosureSpace, a: Iterable[Point], z: Iterable[Point]) -> Tuple[int, int]:
    """检查 Z ⊆ A ⊆ X 且 c(Z) ⊆ i(A)，返回 (A, Z) 的位向量"""
    a_mask, z_mask = space.mask_of(a), space.mask_of(z)
    if z_mask & ~a_mask:
        raise InputError("切除要求 Z ⊆ A")
    if space.closure_mask(z_mask) & ~space.interior_mask(a_mask):
        raise InputError("切除要求 c(Z) ⊆ i(A)")
    return a_mask, z_mask


def admissible_excision_set(space: FiniteClosureSpace, a: Iterable[Point]) -> frozenset:
    """满足 c(Z) ⊆ i(A) 的最大 Z：所有单点闭包落在 i(A) 中的点"""
    inner = space.interior_mask(space.mask_of(a))
    mask = 0
    for i, closure in enumerate(space.closure_masks):
        if closure & ~inner == 0:
            mask |= 1 << i
    return space.points_of(mask)


def excision_check(space: FiniteClosureSpace, a: Iterable[Point], z: Iterable[Point],
                   selector: TheorySelector, max_dim: int) -> VerificationReport:
    """包含 (X−Z, A−Z) → (X, A) 在相对同调与相对上同调上诱导同构"""
    a, z = frozenset(a), frozenset(z)
    a_mask, z_mask = check_excision_triple(space, a, z)
    nerve = _nerve(space, selector)
    excised = chains.nerve_complex(nerve, max_dim, keep=lambda m: m & z_mask == 0 and m & ~a_mask != 0)
    full = chains.relative_complex(SpacePair(space, a), selector, max_dim, nerve=nerve)
    inclusion = selection_map(excised, full)

    homology_iso, cohomology_iso = {}, {}
    groups = {}
    for n in range(max_dim + 1):
        induced = homology.induced_homology_map(inclusion, n)
        homology_iso[str(n)] = induced.is_isomorphism()
        groups[str(n)] = [str(induced.source.group), str(induced.target.group)]
        # 上同调方向相反：限制映射是包含矩阵的转置
        source = homology.cohomology_subquotient(chains.dualize(full), n)
        target = homology.cohomology_subquotient(chains.dualize(excised), n)
        restriction = homology.HomologyMap(source, target, cycle_map(source, target, inclusion.matrix(n).T))
        cohomology_iso[str(n)] = restriction.is_isomorphism()

    ok = all(homology_iso.values()) and all(cohomology_iso.values())
    details = {"homology_isomorphic": homology_iso, "cohomology_isomorphic": cohomology_iso,
               "H(X-Z,A-Z) / H(X,A)": groups}
    return _finish(VerificationReport(theorem="excision", selector=selector.label,
                                      instance=_describe(space, A=a, Z=z),
                                      status=_status(ok, _asserted(selector)), details=details))


# ----------------------------------------------------------------------
# 比较定理与棱柱同伦
# ----------------------------------------------------------------------

def comparison_check(space: FiniteClosureSpace, interval: Interval, max_dim: int) -> VerificationReport:
    """
    比较链映射 f 是链映射、逐维单射、低维为恒等，且诱导同调同构
    """
    selector = TheorySelector(interval=interval, product=ProductKind.CROSS, flavor=Flavor.SIMPLICIAL)
    f = chains.comparison_chain_map(space, selector, max_dim)
    chain_map_ok = f.is_chain_map()

    injective = {}
    for n in range(f.source.top + 1):
        images = {nerves.comparison_map(s) for s in f.source.bases[n]}
        injective[str(n)] = len(images) == len(f.source.bases[n])

    identity_low = {}
    for n in range(min(2, f.source.top + 1)):
        columns = [k for k, s in enumerate(f.source.bases[n]) if not nerves.is_degenerate_simplex(s)]
        block = f.matrix(n)[:, columns]
        identity_low[str(n)] = (block.shape[0] == block.shape[1]
                                and bool(np.all(np.abs(block).sum(axis=0) == 1))
                                and bool(np.all(np.abs(block).sum(axis=1) == 1)))

    isomorphic = {str(n): homology.induced_homology_map(f, n).is_isomorphism() for n in range(max_dim + 1)}
    ok = chain_map_ok and all(injective.values()) and all(identity_low.values()) and all(isomorphic.values())
    details = {"chain_map": chain_map_ok, "injective": injective, "identity_low_dims": identity_low,
               "isomorphic": isomorphic}
    return _finish(VerificationReport(theorem="comparison", selector=f"({interval.value},cross,simplicial→cubical)",
                                      instance=_describe(space), status="verified" if ok else "refuted",
                                      details=details))


class PrismHomotopy:
    """
    链同伦 P: Cₙ(X) → Cₙ₊₁(Y)，满足 ∂P + P∂ = g_# − f_#

    每一步 Hᵢ 贡献 Σⱼ (−1)ʲ τ_{i,j}，τ_{i,j} = (hᵢ(σ₀),…,hᵢ(σⱼ),hᵢ₊₁(σⱼ),…,hᵢ₊₁(σₙ))；
    反向的步取相反符号。复形取 Moore 单纯复形。
    """

    def __init__(self, witness: homotopy.HomotopyWitness, max_dim: int):
        if witness.product is not ProductKind.CROSS:
            raise InputError("棱柱同伦需要 (J,×) 同伦")
        if not witness.verify():
            raise InputError("同伦数据不是有效的见证")
        self.witness = witness
        self.selector = TheorySelector(interval=witness.interval, flavor=Flavor.SIMPLICIAL)
        f, g = witness.maps[0], witness.maps[-1]
        self.source = chains.chain_complex(f.source, self.selector, max_dim, normalize=False)
        self.target = chains.chain_complex(f.target, self.selector, max_dim, normalize=False)
        self.f = chains.induced_chain_map(f, self.source, self.target, check=False)
        self.g = chains.induced_chain_map(g, self.source, self.target, check=False)
        self.max_dim = max_dim
        self.matrices = {n: self._matrix(n) for n in range(max_dim + 1)}

    def _matrix(self, n: int) -> np.ndarray:
        index = self.target.index(n + 1)
        matrix = np.zeros((self.target.rank(n + 1), self.source.rank(n)), dtype=np.int64)
        maps = self.witness.maps
        for k, step in enumerate(self.witness.steps):
            lower, upper = (maps[k], maps[k + 1]) if step.forward else (maps[k + 1], maps[k])
            sign = 1 if step.forward else -1
            for col, s in enumerate(self.source.bases[n]):
                for j in range(n + 1):
                    tau = tuple(lower.images[v] for v in s[:j + 1]) + tuple(upper.images[v] for v in s[j:])
                    matrix[index[tau], col] += sign * (-1 if j % 2 else 1)
        return matrix

    def failures(self) -> List[Tuple[int, int]]:
        """逐个基元素检查恒等式，返回不成立的 (维数, 列)"""
        bad = []
        for n in range(self.max_dim + 1):
            left = int_dot(self.target.boundary(n + 1), self.matrices[n])
            if n > 0:
                left = left + int_dot(self.matrices[n - 1], self.source.boundary(n))
            right = self.g.matrix(n) - self.f.matrix(n)
            for col in np.nonzero(np.any(left != right, axis=0))[0]:
                bad.append((n, int(col)))
        return bad


def prism_homotopy(f: SpaceMap, g: SpaceMap, witness: homotopy.HomotopyWitness, max_dim: int) -> PrismHomotopy:
    """由同伦见证构造棱柱链同伦"""
    if witness.maps[0] != f or witness.maps[-1] != g:
        raise InputError("见证的端点与给定映射不符")
    return PrismHomotopy(witness, max_dim)


def prism_check(f: SpaceMap, g: SpaceMap, witness: homotopy.HomotopyWitness, max_dim: int) -> VerificationReport:
    prism = prism_homotopy(f, g, witness, max_dim)
    bad = prism.failures()
    return _finish(VerificationReport(theorem="prism", selector=prism.selector.label,
                                      instance=f"{_describe(f.source)} steps={witness.length}",
                                      status="refuted" if bad else "verified",
                                      details={"failures": bad[:10], "steps": witness.length}))


def homotopy_invariance_check(f: SpaceMap, g: SpaceMap, selector: TheorySelector, max_dim: int,
                              budget: Optional[int] = None) -> VerificationReport:
    """f ∼ g 时 f_* = g_*"""
    if selector.is_simplicial and not selector.is_cross:
        # C₄ = J₁⊡J₁ 是 (J₁,⊡) 可缩的，但单纯 H₁(C₄) = ℤ
        raise UnsupportedTheoryError("单纯同调只对 (J,×) 同伦不变")
    product = selector.product
    result = homotopy.are_homotopic(f, g, selector.interval, product, budget)
    details: Dict[str, object] = {"homotopy": result.status}
    if not result.homotopic:
        return _finish(VerificationReport(theorem="homotopy", selector=selector.label,
                                          instance=_describe(f.source), status="unsupported", details=details))
    source = chains.chain_complex(f.source, selector, max_dim)
    target = chains.chain_complex(f.target, selector, max_dim)
    induced_f = chains.induced_chain_map(f, source, target)
    induced_g = chains.induced_chain_map(g, source, target)
    agree = {str(n): homology.induced_homology_map(induced_f, n).equals(homology.induced_homology_map(induced_g, n))
             for n in range(max_dim + 1)}
    details["agree"] = agree
    return _finish(VerificationReport(theorem="homotopy", selector=selector.label, instance=_describe(f.source),
                                      status="verified" if all(agree.values()) else "refuted", details=details))


# ----------------------------------------------------------------------
# Künneth、Eilenberg-Zilber 与泛系数
# ----------------------------------------------------------------------

def _require_cross(selector: TheorySelector, theorem: str) -> None:
    if selector.product is not ProductKind.CROSS:
        raise UnsupportedTheoryError(f"{theorem} 对 ⊡ 理论尚无结论")


def kunneth_formula(h_x: Sequence[HomologyGroup], h_y: Sequence[HomologyGroup], n: int) -> HomologyGroup:
    """⊕ Hᵢ(X)⊗Hₙ₋ᵢ(Y) ⊕ ⊕ Tor(Hᵢ(X), Hₙ₋ᵢ₋₁(Y))"""
    parts = [homology.tensor(h_x[i], h_y[n - i]) for i in range(n + 1)]
    parts += [homology.tor(h_x[i], h_y[n - i - 1]) for i in range(n)]
    return homology.direct_sum(*parts)


def kunneth_check(x: FiniteClosureSpace, y: FiniteClosureSpace, selector: TheorySelector,
                  coefficients: Coefficients, max_dim: int) -> VerificationReport:
    _require_cross(selector, "Künneth 公式")
    product_space = spaces.product(x, y)
    direct = homology.space_homology(product_space, selector, max_dim, coefficients)
    h_x = homology.space_homology(x, selector, max_dim, coefficients)
    h_y = homology.space_homology(y, selector, max_dim, coefficients)
    expected = []
    for n in range(max_dim + 1):
        if coefficients.is_field:
            # 域上没有 Tor 项，维数相乘
            expected.append(HomologyGroup(betti=sum(h_x[i].betti * h_y[n - i].betti for i in range(n + 1))))
        else:
            expected.append(kunneth_formula(h_x, h_y, n))
    agree = {str(n): direct[n] == expected[n] for n in range(max_dim + 1)}
    details = {"direct": [str(g) for g in direct], "formula": [str(g) for g in expected], "agree": agree,
               "coefficients": coefficients.label}
    return _finish(VerificationReport(theorem="kunneth", selector=selector.label,
                                      instance=f"|X|={len(x)} |Y|={len(y)}",
                                      status="verified" if all(agree.values()) else "refuted", details=details))


def eilenberg_zilber_rank_check(x: FiniteClosureSpace, y: FiniteClosureSpace, selector: TheorySelector,
                                max_dim: int) -> VerificationReport:
    """H(C(X×Y)) 与 H(C(X)⊗C(Y)) 作为群相等"""
    _require_cross(selector, "Eilenberg-Zilber 定理")
    product_space = spaces.product(x, y)
    direct = homology.space_homology(product_space, selector, max_dim)
    tensor = chains.tensor_complex(chains.chain_complex(x, selector, max_dim),
                                   chains.chain_complex(y, selector, max_dim))
    via_tensor = [homology.homology(tensor, n) for n in range(max_dim + 1)]
    agree = {str(n): direct[n] == via_tensor[n] for n in range(max_dim + 1)}
    details = {"product": [str(g) for g in direct], "tensor": [str(g) for g in via_tensor], "agree": agree}
    return _finish(VerificationReport(theorem="ez", selector=selector.label, instance=f"|X|={len(x)} |Y|={len(y)}",
                                      status="verified" if all(agree.values()) else "refuted", details=details))


def uct_complex_check(complex_: ChainComplex, coefficients: Coefficients) -> Dict[str, Dict[str, bool]]:
    """
    链复形上的泛系数定理：
    Hₙ(C;G) ≅ Hₙ⊗G ⊕ Tor(Hₙ₋₁,G)，Hⁿ(C;G) ≅ Hom(Hₙ,G) ⊕ Ext(Hₙ₋₁,G)
    """
    g = homology.coefficient_group(coefficients)
    top = complex_.max_valid
    integral = [homology.homology(complex_, n) for n in range(top + 1)]
    homology_ok, cohomology_ok = {}, {}
    for n in range(top + 1):
        previous = integral[n - 1] if n > 0 else homology.TRIVIAL
        formula_h = homology.direct_sum(homology.tensor(integral[n], g), homology.tor(previous, g))
        formula_c = homology.direct_sum(homology.hom(integral[n], g), homology.ext(previous, g))
        direct_h = homology.homology(complex_, n, coefficients)
        direct_c = homology.cohomology(complex_, n, coefficients)
        if coefficients.ring is Ring.INTEGERS_MOD:
            p = coefficients.p
            homology_ok[str(n)] = direct_h.betti == homology.vector_dimension(formula_h, p)
            cohomology_ok[str(n)] = direct_c.betti == homology.vector_dimension(formula_c, p)
        else:
            homology_ok[str(n)] = direct_h == formula_h
            cohomology_ok[str(n)] = direct_c == formula_c
    return {"homology": homology_ok, "cohomology": cohomology_ok}


def uct_check(space: FiniteClosureSpace, selector: TheorySelector, coefficients: Coefficients,
              max_dim: int) -> VerificationReport:
    if coefficients.ring is Ring.RATIONALS:
        raise InputError("泛系数检查只支持 G = ℤ 或 ℤ/p")
    complex_ = chains.chain_complex(space, selector, max_dim)
    result = uct_complex_check(complex_, coefficients)
    ok = all(result["homology"].values()) and all(result["cohomology"].values())
    details = dict(result, coefficients=coefficients.label)
    return _finish(VerificationReport(theorem="uct", selector=selector.label, instance=_describe(space),
                                      status="verified" if ok else "refuted", details=details))


# ----------------------------------------------------------------------
# 公理、好对、正规化、不同理论
# ----------------------------------------------------------------------

def dimension_axiom_check(selector: TheorySelector, max_dim: int) -> bool:
    point = spaces.point_space()
    groups = homology.space_homology(point, selector, max_dim)
    return groups[0] == HomologyGroup(betti=1) and all(g.is_trivial for g in groups[1:])


def eilenberg_steenrod_suite(selector: TheorySelector, pairs: Sequence[SpacePair], max_dim: int,
                             budget: Optional[int] = None) -> VerificationReport:
    """
    对语料中的每个空间对检查同伦、切除、维数与长正合列公理

    同伦公理：恒等映射与它的每个一步同伦邻居诱导相同的同调映射。
    切除公理：取满足 c(Z) ⊆ i(A) 的最大 Z。
    """
    _require_cross(selector, "Eilenberg-Steenrod 公理")
    results = {"homotopy": [], "excision": [], "dimension": [], "les": []}
    results["dimension"].append(dimension_axiom_check(selector, max_dim))
    for pair in pairs:
        space = pair.ambient
        search = homotopy.HomotopySearch(space, space, selector.interval, selector.product)
        identity = spaces.identity_map(space)
        for images, _ in search.neighbors(identity.images)[:3]:
            other = SpaceMap.from_indices(space, space, images)
            report = homotopy_invariance_check(identity, other, selector, max_dim, budget)
            results["homotopy"].append(report.status == "verified")
        z = admissible_excision_set(space, pair.subspace_points)
        results["excision"].append(excision_check(space, pair.subspace_points, z, selector, max_dim).status == "verified")
        results["les"].append(les_of_pair_check(pair, selector, max_dim).status == "verified")
    summary = {axiom: {"passed": sum(flags), "total": len(flags)} for axiom, flags in results.items()}
    ok = all(all(flags) for flags in results.values())
    return _finish(VerificationReport(theorem="es-axioms", selector=selector.label, instance=f"pairs={len(pairs)}",
                                      status="verified" if ok else "refuted", details=summary))


def good_pair_check(pair: SpacePair, neighborhood: Iterable[Point], selector: TheorySelector, max_dim: int,
                    retraction: Optional[SpaceMap] = None, budget: Optional[int] = None) -> VerificationReport:
    """
    好对：A ⊆ i(B) 且 B 形变收缩到 A 时，Hₙ(X,A) ≅ H̃ₙ(X/A)

    未给出收缩时按字典序搜索；找不到见证时报告 unsupported。
    """
    space = pair.ambient
    neighborhood = frozenset(neighborhood)
    b_mask = space.mask_of(neighborhood)
    if pair.mask & ~space.interior_mask(b_mask):
        raise InputError("好对要求 A ⊆ i(B)")
    if not pair.mask:
        raise InputError("好对要求 A 非空")
    b_space = spaces.subspace(space, neighborhood)
    retract = homotopy.is_deformation_retraction(b_space, spaces.space_sorted(space, pair.subspace_points),
                                                 selector.interval, selector.product, retraction, budget)
    instance = _describe(space, A=pair.subspace_points, B=neighborhood)
    if not retract.homotopic:
        return _finish(VerificationReport(theorem="good-pair", selector=selector.label, instance=instance,
                                          status="unsupported",
                                          details={"deformation_retraction": retract.status}))
    quotient, _ = spaces.quotient_by_subspace(pair)
    relative = chains.relative_complex(pair, selector, max_dim)
    h_rel = [homology.homology(relative, n) for n in range(max_dim + 1)]
    h_quot = homology.space_homology(quotient, selector, max_dim, reduced=True)
    agree = {str(n): h_rel[n] == h_quot[n] for n in range(max_dim + 1)}
    details = {"relative": [str(g) for g in h_rel], "quotient_reduced": [str(g) for g in h_quot],
               "agree": agree, "witness": retract.witness.tables() if retract.witness else None}
    return _finish(VerificationReport(theorem="good-pair", selector=selector.label, instance=instance,
                                      status=_status(all(agree.values()), selector.is_cross), details=details))


def normalization_check(space: FiniteClosureSpace, selector: TheorySelector, max_dim: int) -> VerificationReport:
    """
    退化商复形与正规化复形 NA 的同调一致；单纯理论下 Moore 复形也一致
    """
    quotient = homology.space_homology(space, selector, max_dim)
    normalized = homology.homology_table(chains.normalized_complex(space, selector, max_dim))
    moore = homology.space_homology(space, selector, max_dim, normalize=False)
    agree = quotient == normalized
    if selector.is_simplicial:
        agree = agree and moore == quotient
    details = {"quotient": [str(g) for g in quotient], "normalized": [str(g) for g in normalized],
               "moore": [str(g) for g in moore]}
    return _finish(VerificationReport(theorem="normalization", selector=selector.label, instance=_describe(space),
                                      status="verified" if agree else "refuted", details=details))


DISTINCT_GOLDEN = {
    "(j1,cross,simplicial)": HomologyGroup(betti=1),
    "(j1,cross,cubical)": HomologyGroup(betti=1),
    "(j1,inductive,cubical)": HomologyGroup(),
}


def distinct_theories_check(max_dim: int = 1) -> VerificationReport:
    """C₄ 的 H₁ 在 (J₁,单纯)、(J₁,×,立方) 中为 ℤ，在 (J₁,⊡,立方) 中为 0"""
    c4 = spaces.cycle_space(4)
    observed = {}
    for label in DISTINCT_GOLDEN:
        _, product, flavor = label.strip("()").split(",")
        selector = TheorySelector.parse("j1", product, flavor)
        observed[label] = homology.space_homology(c4, selector, max(1, max_dim))[1]
    agree = {label: observed[label] == DISTINCT_GOLDEN[label] for label in DISTINCT_GOLDEN}
    details = {"H1": {label: str(g) for label, g in observed.items()}, "agree": agree}
    return _finish(VerificationReport(theorem="distinct", selector="j1", instance="C4",
                                      status="verified" if all(agree.values()) else "refuted", details=details))


def unsupported_report(theorem: str, selector: TheorySelector, instance: str, reason: str) -> VerificationReport:
    return _finish(VerificationReport(theorem=theorem, selector=selector.label, instance=instance,
                                      status="unsupported", details={"reason": reason}))
