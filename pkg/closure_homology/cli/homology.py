import argparse
import logging

from closure_homology.cli.common import add_common_flags, build_run_config
from closure_homology.models.schemas import HomologyReport, RunConfig
from closure_homology.models.space import FiniteClosureSpace
from closure_homology.services import chains, homology, nerves
from closure_homology.utils.helpers import dump_model, load_space, write_text

logger = logging.getLogger(__name__)


def homology_report(space: FiniteClosureSpace, config: RunConfig) -> HomologyReport:
    """
    计算 0..max_dim 的同调与约化同调

    资源超限时直接抛出 ResourceLimitError，不输出部分结果。
    """
    nerve = nerves.Nerve(space, config.selector, config.cap)
    complex_ = chains.chain_complex(space, config.selector, config.max_dim, nerve=nerve)
    groups = homology.homology_table(complex_, config.coefficients)
    reduced = homology.homology_table(complex_.augment(), config.coefficients)
    return HomologyReport(
        selector=config.selector.label,
        coefficients=config.coefficients.label,
        homology=[g.to_entry(n) for n, g in enumerate(groups)],
        reduced=[g.to_entry(n) for n, g in enumerate(reduced)],
    )


def cmd_homology(args: argparse.Namespace) -> int:
    config = build_run_config(args)
    space = load_space(args.space)
    report = homology_report(space, config)
    logger.info(f"{report.selector} 同调: {[str(e.betti) + str(e.torsion) for e in report.homology]}")
    write_text(dump_model(report), config.out)
    return 0


def register(subparsers) -> None:
    parser = subparsers.add_parser("homology", help="计算同调群")
    add_common_flags(parser)
    parser.add_argument("space", help="空间文件路径")
    parser.set_defaults(handler=cmd_homology)
