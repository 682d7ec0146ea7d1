from enum import Enum
from typing import Optional

from pydantic import BaseModel, ConfigDict, model_validator
from sympy import isprime

from closure_homology.core.exceptions import InputError, NonFinitaryTheoryError


class Interval(str, Enum):
    """区间对象"""
    J1 = "j1"
    JPLUS = "jplus"
    # 连续区间 I 只用于给出明确的拒绝信息
    I = "i"


class ProductKind(str, Enum):
    """乘积运算：× 为乘积闭包，⊡ 为归纳乘积闭包"""
    CROSS = "cross"
    INDUCTIVE = "inductive"


class Flavor(str, Enum):
    SIMPLICIAL = "simplicial"
    CUBICAL = "cubical"


class TheorySelector(BaseModel):
    """
    同调理论选择器：(区间, 乘积, 类型)

    单纯神经不依赖乘积；单纯选择器上的乘积只影响同伦判定与乘积空间相关的定理。
    """
    model_config = ConfigDict(frozen=True)

    interval: Interval = Interval.J1
    product: ProductKind = ProductKind.CROSS
    flavor: Flavor = Flavor.SIMPLICIAL

    @model_validator(mode="after")
    def _check_theory(self) -> "TheorySelector":
        if self.interval is Interval.I:
            raise NonFinitaryTheoryError(self.interval.value)
        return self

    @classmethod
    def parse(cls, interval: str, product: str = "cross", flavor: str = "simplicial") -> "TheorySelector":
        """从CLI字符串构造选择器"""
        try:
            return cls(interval=Interval(interval.lower()), product=ProductKind(product.lower()),
                       flavor=Flavor(flavor.lower()))
        except ValueError as e:
            raise InputError(f"无效的理论选择: {interval}/{product}/{flavor} ({e})") from None

    @property
    def is_simplicial(self) -> bool:
        return self.flavor is Flavor.SIMPLICIAL

    @property
    def is_cross(self) -> bool:
        return self.product is ProductKind.CROSS

    @property
    def label(self) -> str:
        return f"({self.interval.value},{self.product.value},{self.flavor.value})"

    def with_flavor(self, flavor: Flavor) -> "TheorySelector":
        return TheorySelector(interval=self.interval, product=self.product, flavor=flavor)


def all_selectors():
    """六个已实现的理论：两个单纯理论 + 四个立方理论"""
    result = []
    for interval in (Interval.J1, Interval.JPLUS):
        result.append(TheorySelector(interval=interval, product=ProductKind.CROSS, flavor=Flavor.SIMPLICIAL))
    for interval in (Interval.J1, Interval.JPLUS):
        for product in (ProductKind.CROSS, ProductKind.INDUCTIVE):
            result.append(TheorySelector(interval=interval, product=product, flavor=Flavor.CUBICAL))
    return result


class Ring(str, Enum):
    INTEGERS = "Z"
    INTEGERS_MOD = "Zp"
    RATIONALS = "Q"


class Coefficients(BaseModel):
    """系数环：ℤ、ℤ/p (p 为素数) 或 ℚ"""
    model_config = ConfigDict(frozen=True)

    ring: Ring = Ring.INTEGERS
    p: Optional[int] = None

    @model_validator(mode="after")
    def _check_prime(self) -> "Coefficients":
        if self.ring is Ring.INTEGERS_MOD:
            if self.p is None or not isprime(self.p):
                raise InputError(f"ℤ/p 系数要求 p 为素数，得到 {self.p}")
        elif self.p is not None:
            raise InputError("只有 ℤ/p 系数需要参数 p")
        return self

    @classmethod
    def parse(cls, text: str) -> "Coefficients":
        """解析 "Z"、"Q" 或 "Zp:<p>" """
        text = text.strip()
        if text == "Z":
            return cls()
        if text == "Q":
            return cls(ring=Ring.RATIONALS)
        if text.startswith("Zp:"):
            try:
                return cls(ring=Ring.INTEGERS_MOD, p=int(text[3:]))
            except ValueError:
                raise InputError(f"无效的系数: {text}") from None
        raise InputError(f"无效的系数: {text}，应为 Z、Q 或 Zp:<p>")

    @classmethod
    def mod(cls, p: int) -> "Coefficients":
        return cls(ring=Ring.INTEGERS_MOD, p=p)

    @property
    def is_field(self) -> bool:
        return self.ring is not Ring.INTEGERS

    @property
    def label(self) -> str:
        return f"Z/{self.p}" if self.ring is Ring.INTEGERS_MOD else self.ring.value


INTEGERS = Coefficients()
RATIONALS = Coefficients(ring=Ring.RATIONALS)
