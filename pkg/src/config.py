from pathlib import Path
from typing import Literal

from pydantic_settings import BaseSettings


class Settings(BaseSettings):
    """应用配置"""
    # 基本信息
    app_name: str = "Cayley Census"
    version: str = "1.0.0"
    log_level: Literal["DEBUG", "INFO", "WARNING", "ERROR"] = "INFO"

    # 路径配置
    base_dir: Path = Path(__file__).parent.parent
    data_dir: Path = base_dir / "data"
    outputs_dir: Path = data_dir / "outputs"
    fixtures_dir: Path = data_dir / "fixtures"

    # ------------------------------------------------------------
    # 置换群 (perm)
    # ------------------------------------------------------------
    overgroup_cap: int = 10**6                 # maximal_overgroups 允许的 |A| 上限
    fingerprint_element_cap: int = 10**4       # 不超过该阶时用完整元素表做去重指纹

    # ------------------------------------------------------------
    # 有限群 (groups)
    # ------------------------------------------------------------
    group_automorphism_cap: int = 64           # 群自同构搜索的阶上限
    subgroup_lattice_cap: int = 64             # 子群格/正规子群枚举的阶上限

    # ------------------------------------------------------------
    # 自同构群搜索 (autgrp)
    # ------------------------------------------------------------
    brute_force_max_degree: int = 8            # n! 暴力枚举的顶点数上限

    # ------------------------------------------------------------
    # Census
    # ------------------------------------------------------------
    exact_census_cap: int = 20                 # 精确普查 r 上限 (2^r 个子集)
    unlabelled_census_cap: int = 12            # 无标号普查 r 上限
    census_workers: int = 1                    # 默认进程数 (环境变量 CENSUS_WORKERS)
    census_chunk_size: int = 2048              # 每个并行分块的子集/代表元数

    # ------------------------------------------------------------
    # Lemma lab
    # ------------------------------------------------------------
    lemma_cap: int = 12                        # 划分固定子群检验的 r 上限
    phi_census_cap: int = 10                   # Phi 计数 (逐子集全自同构) 的 r 上限
    fixed_subsets_max_degree: int = 62         # 2^{cycles} 需要放进 64 位整数

    # ------------------------------------------------------------
    # 界的常数
    # ------------------------------------------------------------
    bound_b: float = 1.0                       # 非 DRR 计数界中的绝对常数 b
    bound_epsilon: float = 0.001               # epsilon

    class Config:
        env_file = ".env"
        env_file_encoding = "utf-8"


settings = Settings()


def ensure_output_dirs() -> None:
    """确保输出目录存在 (CLI 写文件前调用)"""
    for dir_path in [settings.data_dir, settings.outputs_dir, settings.fixtures_dir]:
        dir_path.mkdir(parents=True, exist_ok=True)
