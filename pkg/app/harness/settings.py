"""运行环境设置: 从 .env 与环境变量读取"""
import logging
import os

from dotenv import load_dotenv

from app.errors import ParameterError

logger = logging.getLogger("harness")

load_dotenv()

DEFAULT_MAX_QUBITS = 26


def _int_env(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
    except ValueError as e:
        raise ParameterError(f"环境变量 {name} 必须是整数: {raw!r}") from e
    if value < 1:
        raise ParameterError(f"环境变量 {name} 必须 ≥ 1: {value}")
    return value


def max_qubits() -> int:
    """态矢量模拟的量子比特上限 (26 个约需 1 GiB 振幅)"""
    return _int_env("SVP_VQE_MAX_QUBITS", DEFAULT_MAX_QUBITS)


def default_jobs() -> int:
    """并行进程数，默认逻辑核数"""
    return _int_env("SVP_VQE_JOBS", os.cpu_count() or 1)
