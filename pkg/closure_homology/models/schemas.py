from pydantic import BaseModel, Field, field_validator
from typing import Any, Dict, List, Literal, Optional

from closure_homology.core.config import settings
from closure_homology.models.theory import Coefficients, TheorySelector


class SpaceFile(BaseModel):
    """闭包空间文件模型"""
    points: List[str]
    closure: Dict[str, List[str]]


class CoverFile(BaseModel):
    """覆盖文件模型"""
    parts: List[List[str]]


class MapFile(BaseModel):
    """映射文件模型"""
    assignment: Dict[str, str]


class HomologyEntry(BaseModel):
    """单个维数的同调群"""
    n: int
    betti: int
    torsion: List[int] = Field(default_factory=list)


class HomologyReport(BaseModel):
    """同调计算报告"""
    selector: str
    coefficients: str
    homology: List[HomologyEntry]
    reduced: List[HomologyEntry]


class Pi0Report(BaseModel):
    """路径分支报告"""
    interval: str
    count: int
    classes: List[List[str]]


class HomotopyReport(BaseModel):
    """同伦判定报告"""
    selector: str
    question: str
    status: Literal["yes", "no", "inconclusive"]
    witness: Optional[List[Dict[str, str]]] = None  # 映射链 h₀,…,h_m 的赋值表
    explored: int = 0


VerificationStatus = Literal["verified", "refuted", "experimental", "unsupported"]


class VerificationReport(BaseModel):
    """定理验证报告，语料模式下每行一个"""
    theorem: str
    selector: str
    instance: str
    status: VerificationStatus
    details: Dict[str, Any] = Field(default_factory=dict)


class RunConfig(BaseModel):
    """一次CLI运行的配置，缺省值取自全局设置"""
    selector: TheorySelector = Field(default_factory=TheorySelector)
    max_dim: int = 2
    coefficients: Coefficients = Field(default_factory=Coefficients)
    cap: int = Field(default_factory=lambda: settings.MAX_CELLS)
    budget: int = Field(default_factory=lambda: settings.HOMOTOPY_BUDGET)
    seed: int = Field(default_factory=lambda: settings.DEFAULT_SEED)
    workers: int = 1
    out: Optional[str] = None

    @field_validator("max_dim")
    @classmethod
    def _check_dim(cls, value: int) -> int:
        if value < 0:
            raise ValueError("max_dim 必须非负")
        # 计算 H_n 需要枚举到 n+1 维
        if value + 1 > settings.MAX_DIM:
            raise ValueError(f"max_dim 至多为 {settings.MAX_DIM - 1}")
        return value

    @field_validator("cap", "budget", "workers")
    @classmethod
    def _check_positive(cls, value: int) -> int:
        if value <= 0:
            raise ValueError("上限与预算必须为正整数")
        return value
