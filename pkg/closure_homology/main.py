import argparse
import logging
import sys
from typing import List, Optional

from closure_homology.cli import build, homology, homotopy, validate, verify
from closure_homology.core.config import settings
from closure_homology.core.exceptions import ClosureSpaceError
from closure_homology.core.logging import setup_logging

# 设置日志
setup_logging(debug=settings.DEBUG)
logger = logging.getLogger(__name__)


def create_parser() -> argparse.ArgumentParser:
    """创建命令行解析器并注册所有子命令"""
    parser = argparse.ArgumentParser(prog="closure-homology", description=settings.APP_NAME)
    parser.add_argument("--version", action="version", version=f"%(prog)s {settings.APP_VERSION}")
    subparsers = parser.add_subparsers(dest="command", required=True)

    # 注册子命令
    for module in (validate, build, homology, homotopy, verify):
        module.register(subparsers)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """
    命令行入口

    Returns:
        退出码：0 成功，2 输入错误，3 资源超限，4 定理被反驳，1 其他错误
    """
    parser = create_parser()
    args = parser.parse_args(argv)

    # 更新调试模式设置
    if args.debug:
        settings.DEBUG = True
        setup_logging(debug=True)

    logger.debug(f"{settings.APP_NAME} {settings.APP_VERSION}: {args.command}")
    try:
        return args.handler(args)
    except ClosureSpaceError as e:
        logger.error(f"{type(e).__name__}: {e}")
        return e.exit_code
    except Exception as e:
        # 全局异常处理
        logger.exception(f"全局异常: {str(e)}")
        return 1


if __name__ == "__main__":
    sys.exit(main())
