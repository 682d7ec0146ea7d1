import os
import json
import logging
from typing import Any, Iterable, List, Optional

from pydantic import BaseModel, ValidationError

from closure_homology.core.config import settings
from closure_homology.core.exceptions import InputError
from closure_homology.models.schemas import CoverFile, MapFile, SpaceFile
from closure_homology.models.space import Cover, FiniteClosureSpace, SpaceMap
from closure_homology.services.spaces import canonical_relabel

logger = logging.getLogger(__name__)


def read_json(path: str) -> Any:
    """
    读取JSON文件

    Args:
        path: 文件路径

    Returns:
        解析后的对象；解析失败时抛出带行列号的 InputError
    """
    try:
        with open(path, "r", encoding="utf-8") as f:
            text = f.read()
    except OSError as e:
        raise InputError(f"无法读取文件 {path}: {e}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"{path}:{e.lineno}:{e.colno}: JSON解析错误: {e.msg}") from None


def _parse(model: type, data: Any, path: str) -> BaseModel:
    try:
        return model.model_validate(data)
    except ValidationError as e:
        first = e.errors()[0]
        where = ".".join(str(x) for x in first["loc"])
        raise InputError(f"{path}: 字段 {where or '<根>'} 格式错误: {first['msg']}") from None


def validate_space_data(data: SpaceFile) -> List[str]:
    """
    检查空间文件的一致性，返回问题列表(为空表示通过)

    检查点名唯一、闭包表覆盖全部点、闭包中无未知点以及自反性。
    """
    problems = []
    names = set()
    for name in data.points:
        if name in names:
            problems.append(f"点名重复: {name}")
        names.add(name)
    for name in data.points:
        if name not in data.closure:
            problems.append(f"点 {name} 缺少闭包表")
            continue
        closure = data.closure[name]
        for other in closure:
            if other not in names:
                problems.append(f"点 {name} 的闭包中出现未知点 {other}")
        if name not in closure:
            problems.append(f"点 {name} 的闭包不包含自身(缺少自反环)")
    for name in data.closure:
        if name not in names:
            problems.append(f"闭包表中出现未声明的点 {name}")
    return problems


def load_space_file(path: str) -> SpaceFile:
    return _parse(SpaceFile, read_json(path), path)


def space_from_data(data: SpaceFile) -> FiniteClosureSpace:
    problems = validate_space_data(data)
    if problems:
        raise InputError("; ".join(problems))
    return FiniteClosureSpace(data.points, data.closure)


def load_space(path: str) -> FiniteClosureSpace:
    """读取并校验空间文件"""
    space = space_from_data(load_space_file(path))
    logger.info(f"已加载空间 {path}: {len(space)} 个点")
    return space


def space_to_data(space: FiniteClosureSpace) -> SpaceFile:
    """规范形式：点按空间顺序、闭包列表按点序，点名取规范字符串"""
    names = canonical_relabel(space)
    if len(set(names.values())) != len(space):
        raise InputError("点的规范名称冲突，无法写出空间文件")
    points = [names[p] for p in space.points]
    closure = {names[p]: [names[q] for q in space.ordered(space.closure_masks[i])]
               for i, p in enumerate(space.points)}
    return SpaceFile(points=points, closure=closure)


def dump_model(model: BaseModel) -> str:
    """确定性的JSON文本"""
    return json.dumps(model.model_dump(mode="json"), ensure_ascii=False, indent=2) + "\n"


def resolve_output_path(out: str) -> str:
    """只有文件名时放到 OUTPUT_DIR 下"""
    if os.path.dirname(out):
        return out
    return os.path.join(settings.OUTPUT_DIR, out)


def write_text(text: str, out: Optional[str]) -> Optional[str]:
    """
    写出文本；out 为空时打印到标准输出

    Returns:
        写入的文件路径，打印时返回 None
    """
    if not out:
        print(text, end="")
        return None
    path = resolve_output_path(out)
    directory = os.path.dirname(path)
    # 确保输出目录存在
    if directory and not os.path.exists(directory):
        os.makedirs(directory)
    with open(path, "w", encoding="utf-8") as f:
        f.write(text)
    logger.info(f"结果已保存到: {path}")
    return path


def save_space(space: FiniteClosureSpace, out: Optional[str]) -> Optional[str]:
    return write_text(dump_model(space_to_data(space)), out)


def _lookup(space: FiniteClosureSpace, name: str, path: str):
    names = {v: k for k, v in canonical_relabel(space).items()}
    if name not in names:
        raise InputError(f"{path}: 未知点 {name}")
    return names[name]


def load_cover(path: str, space: FiniteClosureSpace) -> Cover:
    data = _parse(CoverFile, read_json(path), path)
    return Cover(space, [[_lookup(space, name, path) for name in part] for part in data.parts])


def load_subset(path: str, space: FiniteClosureSpace) -> List:
    """子集文件沿用覆盖格式，取唯一的部分"""
    cover = load_cover(path, space)
    if len(cover.parts) != 1:
        raise InputError(f"{path}: 子集文件应只有一个部分")
    return list(cover.parts[0])


def load_map(path: str, source: FiniteClosureSpace, target: FiniteClosureSpace) -> SpaceMap:
    data = _parse(MapFile, read_json(path), path)
    assignment = {_lookup(source, k, path): _lookup(target, v, path) for k, v in data.assignment.items()}
    return SpaceMap(source, target, assignment)


def map_to_data(smap: SpaceMap) -> MapFile:
    source_names = canonical_relabel(smap.source)
    target_names = canonical_relabel(smap.target)
    return MapFile(assignment={source_names[p]: target_names[q] for p, q in smap.assignment().items()})


def json_lines(records: Iterable[BaseModel]) -> str:
    """语料模式的JSON-lines输出，每行一个报告"""
    return "".join(json.dumps(r.model_dump(mode="json"), ensure_ascii=False, sort_keys=True) + "\n"
                   for r in records)
