"""结果文件: 固定列顺序的 CSV + 记录完整配置的 JSON 附属文件"""
import csv
import logging
import math
from pathlib import Path
from typing import Iterable, List, Mapping, Sequence, Union

from pydantic import BaseModel

logger = logging.getLogger("harness")


def _cell(value):
    if isinstance(value, float):
        if math.isinf(value):
            return "inf"
        return repr(value)
    return "" if value is None else value


def write_csv(path: Union[str, Path], fieldnames: Sequence[str], rows: Iterable[Mapping]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as csvfile:
        writer = csv.DictWriter(csvfile, fieldnames=list(fieldnames), extrasaction="ignore", lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({k: _cell(row.get(k)) for k in fieldnames})
    logger.info(f"结果已写入 {path}")
    return path


def append_csv(path: Union[str, Path], fieldnames: Sequence[str], row: Mapping) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fresh = not path.exists() or path.stat().st_size == 0
    with open(path, "a", newline="", encoding="utf-8") as csvfile:
        writer = csv.DictWriter(csvfile, fieldnames=list(fieldnames), extrasaction="ignore", lineterminator="\n")
        if fresh:
            writer.writeheader()
        writer.writerow({k: _cell(row.get(k)) for k in fieldnames})
    return path


def write_sidecar(csv_path: Union[str, Path], config: BaseModel) -> Path:
    """与 CSV 同名的 .json，内容为解析后的完整配置"""
    path = Path(csv_path).with_suffix(".json")
    path.write_text(config.model_dump_json(indent=2), encoding="utf-8")
    return path


def read_csv(path: Union[str, Path]) -> List[dict]:
    with open(path, newline="", encoding="utf-8") as csvfile:
        return list(csv.DictReader(csvfile))
