import argparse
import logging

from closure_homology.cli.common import add_common_flags, build_run_config
from closure_homology.models.schemas import HomotopyReport, Pi0Report
from closure_homology.services import homotopy, spaces
from closure_homology.utils.helpers import dump_model, load_map, load_space, write_text

logger = logging.getLogger(__name__)


def cmd_pi0(args: argparse.Namespace) -> int:
    """J-路径分支"""
    config = build_run_config(args)
    space = load_space(args.space)
    partition = homotopy.pi0(space, config.selector.interval)
    report = Pi0Report(
        interval=config.selector.interval.value,
        count=partition.count,
        classes=[[spaces.format_point(p) for p in cls] for cls in partition.classes],
    )
    write_text(dump_model(report), config.out)
    return 0


def _report(config, question: str, result: homotopy.HomotopyResult) -> HomotopyReport:
    selector = config.selector
    return HomotopyReport(
        selector=f"({selector.interval.value},{selector.product.value})",
        question=question,
        status=result.status,
        witness=result.witness.tables() if result.witness else None,
        explored=result.explored,
    )


def cmd_homotopy(args: argparse.Namespace) -> int:
    """f ∼ g ?"""
    config = build_run_config(args)
    source = load_space(args.source)
    target = load_space(args.target)
    f = load_map(args.f, source, target)
    g = load_map(args.g, source, target)
    selector = config.selector
    result = homotopy.are_homotopic(f, g, selector.interval, selector.product, config.budget)
    logger.info(f"同伦判定: {result.status}，展开 {result.explored} 个映射")
    write_text(dump_model(_report(config, "homotopic", result)), config.out)
    return 0


def cmd_contractible(args: argparse.Namespace) -> int:
    config = build_run_config(args)
    space = load_space(args.space)
    selector = config.selector
    result = homotopy.is_contractible(space, selector.interval, selector.product, config.budget)
    write_text(dump_model(_report(config, "contractible", result)), config.out)
    return 0


def register(subparsers) -> None:
    parser = subparsers.add_parser("pi0", help="J-路径分支")
    add_common_flags(parser)
    parser.add_argument("space", help="空间文件路径")
    parser.set_defaults(handler=cmd_pi0)

    parser = subparsers.add_parser("homotopy", help="判定两个映射是否同伦")
    add_common_flags(parser)
    parser.add_argument("source", help="定义域空间文件")
    parser.add_argument("target", help="值域空间文件")
    parser.add_argument("f", help="映射文件 f")
    parser.add_argument("g", help="映射文件 g")
    parser.set_defaults(handler=cmd_homotopy)

    parser = subparsers.add_parser("contractible", help="判定空间是否可缩")
    add_common_flags(parser)
    parser.add_argument("space", help="空间文件路径")
    parser.set_defaults(handler=cmd_contractible)
