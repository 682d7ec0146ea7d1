"""
错误层级

每个异常携带CLI退出码：2 输入错误，3 资源/预算超限，4 定理被反驳。
"""


class ClosureSpaceError(Exception):
    """所有业务异常的基类"""
    exit_code = 1


class InputError(ClosureSpaceError):
    """输入错误：未知点、格式错误、前置条件不满足"""
    exit_code = 2


class NonFinitaryTheoryError(InputError):
    """请求了 J = I 这类非有限的理论"""

    def __init__(self, interval: str):
        super().__init__(f"非有限理论(non-finitary theory): 区间 {interval} 不受支持，只支持 j1 与 jplus")
        self.interval = interval


class UnsupportedTheoryError(InputError):
    """定理检查不适用于所选理论"""


class ResourceLimitError(ClosureSpaceError):
    """枚举数量或搜索预算超过配置上限"""
    exit_code = 3


class RefutedError(ClosureSpaceError):
    """断言的定理在具体实例上被反驳"""
    exit_code = 4
