# 闭包空间同调计算包
__version__ = "1.0.0"
