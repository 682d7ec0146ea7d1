import argparse
import json
import logging

from closure_homology.cli.common import add_common_flags
from closure_homology.utils.helpers import load_space_file, validate_space_data, write_text

logger = logging.getLogger(__name__)


def cmd_validate(args: argparse.Namespace) -> int:
    """
    校验空间文件

    Returns:
        0 表示文件合法，1 表示存在问题；JSON 解析错误以 InputError 抛出(退出码 2)
    """
    data = load_space_file(args.space)
    problems = validate_space_data(data)
    for problem in problems:
        logger.error(f"{args.space}: {problem}")
    report = {"file": args.space, "ok": not problems, "points": len(data.points), "problems": problems}
    write_text(json.dumps(report, ensure_ascii=False, indent=2) + "\n", args.out)
    return 0 if not problems else 1


def register(subparsers) -> None:
    parser = subparsers.add_parser("validate", help="校验空间文件")
    add_common_flags(parser)
    parser.add_argument("space", help="空间文件路径")
    parser.set_defaults(handler=cmd_validate)
