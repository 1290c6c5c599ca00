"""哈密顿量交换文件 (JSON)，有理数写成 "p/q" 字符串"""
import json
from fractions import Fraction
from typing import Tuple, Union

from pydantic import ValidationError

from app.errors import ParameterError
from .base import IntegerEncoding, IsingHamiltonian, QuboProblem

Problem = Union[QuboProblem, IsingHamiltonian]


def _rational(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


def dump_hamiltonian(problem: Problem, enc: IntegerEncoding) -> str:
    if isinstance(problem, QuboProblem):
        kind, n_vars, linear, quadratic = "qubo", problem.n_vars, problem.linear, problem.quadratic
    else:
        kind, n_vars, linear, quadratic = "ising", problem.n_qubits, problem.h, problem.J
    payload = {
        "kind": kind,
        "n_vars": n_vars,
        "constant": _rational(problem.constant),
        "linear": [{"i": i, "c": _rational(c)} for i, c in linear.items()],
        "quadratic": [{"i": i, "j": j, "c": _rational(c)} for (i, j), c in quadratic.items()],
        "encoding": enc.model_dump(mode="json"),
    }
    return json.dumps(payload, indent=2, ensure_ascii=False)


def load_hamiltonian(text: str) -> Tuple[Problem, IntegerEncoding]:
    try:
        payload = json.loads(text)
        constant = Fraction(payload["constant"])
        linear = {int(t["i"]): Fraction(t["c"]) for t in payload["linear"]}
        quadratic = {(int(t["i"]), int(t["j"])): Fraction(t["c"]) for t in payload["quadratic"]}
        enc = IntegerEncoding.model_validate(payload["encoding"])
        kind = payload["kind"]
        n_vars = int(payload["n_vars"])
    except (KeyError, TypeError, ValueError, ZeroDivisionError, ValidationError) as e:
        raise ParameterError(f"哈密顿量文件格式错误: {e}") from e
    if kind == "qubo":
        return QuboProblem(n_vars=n_vars, constant=constant, linear=linear, quadratic=quadratic), enc
    if kind == "ising":
        return IsingHamiltonian(n_qubits=n_vars, constant=constant, h=linear, J=quadratic), enc
    raise ParameterError(f"未知的哈密顿量类型: {kind}")
