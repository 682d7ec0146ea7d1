import argparse
import logging
from typing import Callable, Dict, List

from closure_homology.cli.common import add_common_flags
from closure_homology.core.exceptions import InputError
from closure_homology.models.space import FiniteClosureSpace, SpacePair
from closure_homology.models.theory import ProductKind
from closure_homology.services import spaces
from closure_homology.utils.helpers import load_map, load_space, load_subset, save_space

logger = logging.getLogger(__name__)


def _arity(inputs: List[str], n: int, usage: str) -> None:
    if len(inputs) != n:
        raise InputError(f"用法: build {usage}")


def _product(inputs, args):
    _arity(inputs, 2, "product X Y")
    return spaces.product(load_space(inputs[0]), load_space(inputs[1]))


def _inductive_product(inputs, args):
    _arity(inputs, 2, "inductive-product X Y")
    return spaces.inductive_product(load_space(inputs[0]), load_space(inputs[1]))


def _coproduct(inputs, args):
    _arity(inputs, 2, "coproduct X Y")
    space, _, _ = spaces.coproduct(load_space(inputs[0]), load_space(inputs[1]))
    return space


def _pushout(inputs, args):
    _arity(inputs, 5, "pushout A X Y f.json g.json")
    a, x, y = (load_space(path) for path in inputs[:3])
    f = load_map(inputs[3], a, x)
    g = load_map(inputs[4], a, y)
    space, _, _ = spaces.pushout(f, g)
    return space


def _quotient(inputs, args):
    _arity(inputs, 2, "quotient X A.json")
    x = load_space(inputs[0])
    space, _ = spaces.quotient_by_subspace(SpacePair(x, load_subset(inputs[1], x)))
    return space


def _subspace(inputs, args):
    _arity(inputs, 2, "subspace X A.json")
    x = load_space(inputs[0])
    return spaces.subspace(x, load_subset(inputs[1], x))


def _tau(inputs, args):
    _arity(inputs, 1, "tau X")
    return spaces.topological_modification(load_space(inputs[0]))


def _power(inputs, args):
    _arity(inputs, 2, "power [--kind cross|inductive] X n")
    try:
        n = int(inputs[1])
    except ValueError:
        raise InputError(f"幂次必须是整数，得到 {inputs[1]}") from None
    return spaces.power(load_space(inputs[0]), n, ProductKind(args.kind))


def _standard(inputs, args):
    _arity(inputs, 1, "standard KIND [--m M] [--k K]")
    return spaces.standard_space(inputs[0], args.m, args.k)


BUILDERS: Dict[str, Callable] = {
    "product": _product,
    "inductive-product": _inductive_product,
    "coproduct": _coproduct,
    "pushout": _pushout,
    "quotient": _quotient,
    "subspace": _subspace,
    "tau": _tau,
    "power": _power,
    "standard": _standard,
}


def cmd_build(args: argparse.Namespace) -> int:
    """执行构造并写出规范空间文件"""
    space: FiniteClosureSpace = BUILDERS[args.op](args.inputs, args)
    logger.info(f"构造 {args.op} 完成: {len(space)} 个点")
    save_space(space, args.out)
    return 0


def register(subparsers) -> None:
    parser = subparsers.add_parser("build", help="构造新空间")
    add_common_flags(parser)
    parser.add_argument("op", choices=sorted(BUILDERS), help="构造类型")
    parser.add_argument("inputs", nargs="*", help="输入文件及参数")
    parser.add_argument("--kind", default="cross", choices=["cross", "inductive"], help="power 使用的乘积")
    parser.add_argument("--m", type=int, default=1, help="standard 区间长度")
    parser.add_argument("--k", type=int, default=None, help="standard J_mk 的方向位")
    parser.set_defaults(handler=cmd_build)
