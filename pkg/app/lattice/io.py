"""格基文本格式 ``[[a b c][d e f]]`` 的读写"""
import re
from pathlib import Path
from typing import Union

from app.errors import ParameterError
from .base import Basis

_ROW = re.compile(r"\[([^\[\]]*)\]")


def parse_basis(text: str) -> Basis:
    """解析括号格式，容忍任意空白"""
    stripped = text.strip()
    if not (stripped.startswith("[") and stripped.endswith("]")):
        raise ParameterError("格基文本必须以 '[' 开始并以 ']' 结束")
    rows = []
    for group in _ROW.findall(stripped[1:-1]):
        try:
            rows.append([int(tok) for tok in group.split()])
        except ValueError as e:
            raise ParameterError(f"格基中存在非整数元素: {group!r}") from e
    if not rows:
        raise ParameterError("格基文本中没有任何行")
    return Basis.from_rows(rows)


def format_basis(B: Basis) -> str:
    body = "\n".join("[" + " ".join(str(x) for x in row) + "]" for row in B.rows)
    return f"[{body}]\n"


def read_basis(path: Union[str, Path]) -> Basis:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ParameterError(f"无法读取格基文件 {path}: {e}") from e
    return parse_basis(text)


def write_basis(B: Basis, path: Union[str, Path]) -> Path:
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text(format_basis(B), encoding="utf-8")
    return target
