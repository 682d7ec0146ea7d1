import argparse
import logging

from pydantic import ValidationError

from closure_homology.core.config import settings
from closure_homology.core.exceptions import InputError
from closure_homology.models.schemas import RunConfig
from closure_homology.models.theory import Coefficients, TheorySelector

logger = logging.getLogger(__name__)


def add_common_flags(parser: argparse.ArgumentParser) -> None:
    """所有子命令共享的理论选择与资源参数"""
    parser.add_argument("--interval", default="j1", choices=["j1", "jplus", "i"], help="区间对象")
    parser.add_argument("--product", default="cross", choices=["cross", "inductive"], help="乘积闭包 × 或 ⊡")
    parser.add_argument("--flavor", default="simplicial", choices=["simplicial", "cubical"], help="单纯或立方")
    parser.add_argument("--max-dim", type=int, default=2, help="需要的最高同调维数")
    parser.add_argument("--coeff", default="Z", help="系数: Z、Q 或 Zp:<p>")
    parser.add_argument("--cap", type=int, default=settings.MAX_CELLS, help="每维枚举上限")
    parser.add_argument("--budget", type=int, default=settings.HOMOTOPY_BUDGET, help="同伦搜索预算")
    parser.add_argument("--seed", type=int, default=settings.DEFAULT_SEED, help="随机语料种子")
    parser.add_argument("--workers", type=int, default=1, help="语料模式的进程数")
    parser.add_argument("--out", type=str, default=None, help="输出文件，缺省打印到标准输出")
    parser.add_argument("--debug", action="store_true", help="启用调试模式")


def build_run_config(args: argparse.Namespace) -> RunConfig:
    """
    由命令行参数构造运行配置

    Args:
        args: argparse 解析结果

    Returns:
        校验过的 RunConfig；校验失败抛出 InputError
    """
    selector = TheorySelector.parse(args.interval, args.product, args.flavor)
    coefficients = Coefficients.parse(args.coeff)
    try:
        config = RunConfig(selector=selector, max_dim=args.max_dim, coefficients=coefficients, cap=args.cap,
                           budget=args.budget, seed=args.seed, workers=args.workers, out=args.out)
    except ValidationError as e:
        raise InputError("; ".join(err["msg"] for err in e.errors())) from None
    logger.debug(f"运行配置: {config.model_dump(mode='json')}")
    return config
