from pydantic_settings import BaseSettings


class Settings(BaseSettings):
    """应用配置类"""
    # 应用设置
    APP_NAME: str = "有限闭包空间同调计算器"
    APP_VERSION: str = "1.0.0"
    DEBUG: bool = False

    # 资源上限
    MAX_POINTS: int = 64
    MAX_CELLS: int = 10**6
    MAX_DIM: int = 4

    # 同伦搜索预算
    HOMOTOPY_BUDGET: int = 10**5
    MAX_CHAIN_LENGTH: int = 64

    # 随机语料的默认种子
    DEFAULT_SEED: int = 20240607

    # Smith标准形机器字快速路径的数值上界，超过后提升为任意精度整数
    SNF_WORD_LIMIT: int = 2**62

    # 目录设置
    OUTPUT_DIR: str = "output"

    class Config:
        env_file = ".env"
        case_sensitive = True


# 创建全局设置对象
settings = Settings()
