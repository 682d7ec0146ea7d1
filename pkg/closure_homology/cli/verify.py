import argparse
import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Any, Callable, Dict, List

from closure_homology.cli.common import add_common_flags, build_run_config
from closure_homology.core.exceptions import InputError, RefutedError, UnsupportedTheoryError
from closure_homology.models.schemas import RunConfig, VerificationReport
from closure_homology.models.space import SpacePair, iter_bits
from closure_homology.models.theory import ProductKind, Ring
from closure_homology.services import corpus, homotopy, spaces, verification
from closure_homology.utils.helpers import dump_model, json_lines, load_cover, load_map, load_space, load_subset, write_text

logger = logging.getLogger(__name__)

Instance = Dict[str, Any]

USAGE = {
    "mv": "X cover.json",
    "excision": "X A.json Z.json",
    "les": "X A.json",
    "kunneth": "X Y",
    "ez": "X Y",
    "uct": "X",
    "comparison": "X",
    "es-axioms": "X A.json",
    "cover-subcomplex": "X cover.json",
    "good-pair": "X A.json B.json [retraction.json]",
    "normalization": "X",
    "distinct": "",
    "prism": "X Y f.json g.json",
}


# ----------------------------------------------------------------------
# 实例
# ----------------------------------------------------------------------

def load_instance(theorem: str, inputs: List[str]) -> Instance:
    """按定理读取输入文件"""
    expected = [part for part in USAGE[theorem].split() if not part.startswith("[")]
    if len(inputs) < len(expected) or len(inputs) > len(USAGE[theorem].split()):
        raise InputError(f"用法: verify {theorem} {USAGE[theorem]}")
    if theorem == "distinct":
        return {}
    space = load_space(inputs[0])
    instance: Instance = {"space": space}
    if theorem in ("mv", "cover-subcomplex"):
        cover = load_cover(inputs[1], space)
        if theorem == "mv" and len(cover.parts) != 2:
            raise InputError("Mayer-Vietoris 需要恰好两个部分的覆盖")
        instance["cover"] = cover
    elif theorem in ("les", "es-axioms"):
        instance["pair"] = SpacePair(space, load_subset(inputs[1], space))
    elif theorem == "excision":
        instance["a"] = load_subset(inputs[1], space)
        instance["z"] = load_subset(inputs[2], space)
    elif theorem in ("kunneth", "ez"):
        instance["other"] = load_space(inputs[1])
    elif theorem == "good-pair":
        instance["pair"] = SpacePair(space, load_subset(inputs[1], space))
        instance["neighborhood"] = load_subset(inputs[2], space)
        if len(inputs) == 4:
            b = spaces.subspace(space, instance["neighborhood"])
            a = spaces.subspace(space, instance["pair"].subspace_points)
            instance["retraction"] = load_map(inputs[3], b, a)
    elif theorem == "prism":
        target = load_space(inputs[1])
        instance["f"] = load_map(inputs[2], space, target)
        instance["g"] = load_map(inputs[3], space, target)
    return instance


def corpus_instance(theorem: str, seed: int, k: int, config: RunConfig) -> Instance:
    """语料模式下第 k 个随机实例"""
    rng = corpus.instance_rng(seed, k)
    high = 5 if theorem == "comparison" else 4
    space = corpus.random_space(rng, corpus.random_size(rng, 2, high))
    instance: Instance = {"space": space}
    if theorem in ("mv", "cover-subcomplex"):
        instance["cover"] = corpus.random_interior_cover(rng, space)
    elif theorem in ("les", "es-axioms"):
        instance["pair"] = corpus.random_pair(rng, space)
    elif theorem == "excision":
        instance["a"], instance["z"] = corpus.random_excision_triple(rng, space)
    elif theorem in ("kunneth", "ez"):
        instance["space"] = corpus.random_space(rng, corpus.random_size(rng, 1, 3))
        instance["other"] = corpus.random_space(rng, corpus.random_size(rng, 1, 3))
    elif theorem == "good-pair":
        pair = corpus.random_pair(rng, space)
        b_mask = 0
        for i in iter_bits(pair.mask):
            b_mask |= space.neighborhood_masks[i]
        instance["pair"] = pair
        instance["neighborhood"] = space.points_of(b_mask)
    elif theorem == "prism":
        result = corpus.homotopic_pair(rng, space, space, config.selector.interval, ProductKind.CROSS,
                                       budget=config.budget)
        instance["witness"] = result.witness if result is not None else None
    return instance


# ----------------------------------------------------------------------
# 检查
# ----------------------------------------------------------------------

def _prism(instance: Instance, config: RunConfig) -> VerificationReport:
    selector = config.selector
    witness = instance.get("witness")
    if witness is None and "f" in instance:
        result = homotopy.are_homotopic(instance["f"], instance["g"], selector.interval, ProductKind.CROSS,
                                        config.budget)
        witness = result.witness
    if witness is None:
        return verification.unsupported_report("prism", selector, f"|X|={len(instance['space'])}",
                                               "没有找到 (J,×) 同伦见证")
    return verification.prism_check(witness.maps[0], witness.maps[-1], witness, config.max_dim)


def _uct(instance: Instance, config: RunConfig) -> VerificationReport:
    if config.coefficients.ring is Ring.RATIONALS:
        raise InputError("泛系数检查只支持 Z 或 Zp:<p>")
    return verification.uct_check(instance["space"], config.selector, config.coefficients, config.max_dim)


CHECKS: Dict[str, Callable[[Instance, RunConfig], VerificationReport]] = {
    "mv": lambda i, c: verification.mayer_vietoris_check(i["space"], i["cover"].parts[0], i["cover"].parts[1],
                                                         c.selector, c.max_dim),
    "excision": lambda i, c: verification.excision_check(i["space"], i["a"], i["z"], c.selector, c.max_dim),
    "les": lambda i, c: verification.les_of_pair_check(i["pair"], c.selector, c.max_dim),
    "kunneth": lambda i, c: verification.kunneth_check(i["space"], i["other"], c.selector, c.coefficients,
                                                       c.max_dim),
    "ez": lambda i, c: verification.eilenberg_zilber_rank_check(i["space"], i["other"], c.selector, c.max_dim),
    "uct": _uct,
    "comparison": lambda i, c: verification.comparison_check(i["space"], c.selector.interval, c.max_dim),
    "es-axioms": lambda i, c: verification.eilenberg_steenrod_suite(c.selector, [i["pair"]], c.max_dim, c.budget),
    "cover-subcomplex": lambda i, c: verification.cover_subcomplex_check(i["space"], i["cover"], c.selector,
                                                                         c.max_dim),
    "good-pair": lambda i, c: verification.good_pair_check(i["pair"], i["neighborhood"], c.selector, c.max_dim,
                                                           i.get("retraction"), c.budget),
    "normalization": lambda i, c: verification.normalization_check(i["space"], c.selector, c.max_dim),
    "distinct": lambda i, c: verification.distinct_theories_check(c.max_dim),
    "prism": _prism,
}


def run_check(theorem: str, instance: Instance, config: RunConfig) -> VerificationReport:
    """执行单个检查；不适用于所选理论时返回 unsupported 报告"""
    try:
        return CHECKS[theorem](instance, config)
    except UnsupportedTheoryError as e:
        space = instance.get("space")
        label = f"|X|={len(space)}" if space is not None else ""
        return verification.unsupported_report(theorem, config.selector, label, str(e))


def corpus_worker(job) -> Dict[str, Any]:
    """进程池任务：(定理, 种子, 序号, 配置) → 报告字典"""
    theorem, seed, k, config = job
    report = run_check(theorem, corpus_instance(theorem, seed, k, config), config)
    data = report.model_dump(mode="json")
    data["instance"] = f"#{k} {data['instance']}"
    return data


def run_corpus(theorem: str, count: int, config: RunConfig) -> List[VerificationReport]:
    """
    在 count 个随机实例上运行检查

    多进程时结果仍按实例顺序排列，输出与进程数无关。
    """
    jobs = [(theorem, config.seed, k, config) for k in range(count)]
    if config.workers > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            results = list(pool.map(corpus_worker, jobs))
    else:
        results = [corpus_worker(job) for job in jobs]
    return [VerificationReport.model_validate(data) for data in results]


def cmd_verify(args: argparse.Namespace) -> int:
    config = build_run_config(args)
    if args.corpus < 0:
        raise InputError("--corpus 不能为负数")
    if args.corpus > 0:
        reports = run_corpus(args.theorem, args.corpus, config)
        write_text(json_lines(reports), config.out)
    else:
        reports = [run_check(args.theorem, load_instance(args.theorem, args.inputs), config)]
        write_text(dump_model(reports[0]), config.out)
    counts: Dict[str, int] = {}
    for report in reports:
        counts[report.status] = counts.get(report.status, 0) + 1
    logger.info(f"verify {args.theorem}: {counts}")
    refuted = counts.get("refuted", 0)
    if refuted:
        raise RefutedError(f"{args.theorem} 在 {refuted} 个实例上被反驳")
    return 0


def register(subparsers) -> None:
    parser = subparsers.add_parser("verify", help="定理验证")
    add_common_flags(parser)
    parser.add_argument("theorem", choices=sorted(USAGE), help="要验证的定理")
    parser.add_argument("inputs", nargs="*", help="输入文件")
    parser.add_argument("--corpus", type=int, default=0, help="改为在 N 个随机实例上验证")
    parser.set_defaults(handler=cmd_verify)
