"""QUBO 构造 (范数目标与零向量惩罚) 以及到 Ising 哈密顿量的转换"""
import logging
from collections import defaultdict
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple, Union

from app.errors import LengthMismatchError, ParameterError
from app.lattice import Basis, GramMatrix
from .base import IntegerEncoding, IsingHamiltonian, QuboProblem
from .integer import auxiliary_chain

logger = logging.getLogger("encoding")

# (常数, {变量: 系数})
LinearForm = Tuple[Fraction, Dict[int, Fraction]]


class _Accumulator:
    """按 s_i² = s_i 折叠平方项，二次项只存 i<j"""

    def __init__(self):
        self.constant = Fraction(0)
        self.linear: Dict[int, Fraction] = defaultdict(Fraction)
        self.quadratic: Dict[Tuple[int, int], Fraction] = defaultdict(Fraction)

    def add_product(self, a: LinearForm, b: LinearForm, scale) -> None:
        a0, a_terms = a
        b0, b_terms = b
        self.constant += scale * a0 * b0
        for v, c in a_terms.items():
            self.linear[v] += scale * c * b0
        for v, c in b_terms.items():
            self.linear[v] += scale * a0 * c
        for u, cu in a_terms.items():
            for v, cv in b_terms.items():
                if u == v:
                    self.linear[u] += scale * cu * cv
                else:
                    self.quadratic[(min(u, v), max(u, v))] += scale * cu * cv

    def build(self, n_vars: int) -> QuboProblem:
        return QuboProblem(
            n_vars=n_vars,
            constant=self.constant,
            linear={k: v for k, v in sorted(self.linear.items()) if v != 0},
            quadratic={k: v for k, v in sorted(self.quadratic.items()) if v != 0},
        )


def _entries(G: Union[GramMatrix, Sequence[Sequence]]) -> Sequence[Sequence]:
    return G.entries if isinstance(G, GramMatrix) else G


def coordinate_forms(enc: IntegerEncoding) -> List[LinearForm]:
    return [
        (Fraction(c.offset), {k: Fraction(w) for k, w in zip(c.bit_indices, c.weights)})
        for c in enc.coordinates
    ]


def _norm_objective(G, enc: IntegerEncoding) -> _Accumulator:
    entries = _entries(G)
    if len(entries) != enc.n:
        raise LengthMismatchError(f"Gram 矩阵秩 {len(entries)} 与编码坐标数 {enc.n} 不一致")
    forms = coordinate_forms(enc)
    acc = _Accumulator()
    for i, row in enumerate(entries):
        for j, g in enumerate(row):
            if g:
                acc.add_product(forms[i], forms[j], Fraction(g))
    return acc


def build_qubo(G: Union[GramMatrix, Sequence[Sequence]], enc: IntegerEncoding) -> QuboProblem:
    """x·G·xᵀ 代入编码后的精确 QUBO"""
    q = _norm_objective(G, enc).build(enc.n_bits)
    logger.debug(f"QUBO: {q.n_vars} 个变量, {len(q.quadratic)} 个二次项")
    return q


def build_penalty_qubo(G: Union[GramMatrix, Sequence[Sequence]], enc: IntegerEncoding, P) -> QuboProblem:
    """范数目标加上 P·(1 + Σ z_i τ_i) + P·Σ ζ_i ω_i

    z_n = 1 与 z_{n-1} = ζ_n 已代入。范数部分按线性形式 offset + Σ w·s 展开，
    在 ζ_i ω_i = 0 的比特串上与解码一致；其余比特串至少多出 P。
    """
    if enc.scheme != "penalty":
        raise ParameterError("零向量惩罚需要 penalty 编码")
    P = Fraction(P)
    if P <= 0:
        raise ParameterError(f"惩罚系数必须为正: {P}")
    acc = _norm_objective(G, enc)
    zeta = [c.zeta for c in enc.coordinates]
    # 1 - ζ_k 的线性形式
    one_minus = [(Fraction(1), {k: Fraction(-1)}) for k in zeta]
    # z 链中的元素: 自由变量下标、ζ_n 下标或常数 1
    chain = auxiliary_chain([("var", k) for k in zeta], [("var", k) for k in enc.aux])
    acc.constant += P
    for i, link in enumerate(chain):
        z_form: LinearForm = (Fraction(0), {link[1]: Fraction(1)}) if link != 1 else (Fraction(1), {})
        tau_const = -one_minus[i][0]
        tau_terms = {k: -c for k, c in one_minus[i][1].items()}
        for c0, terms in one_minus[i + 1 :]:
            tau_const += c0
            for k, c in terms.items():
                tau_terms[k] = tau_terms.get(k, Fraction(0)) + c
        acc.add_product(z_form, (tau_const, tau_terms), P)
    for c in enc.coordinates:
        acc.add_product((Fraction(0), {c.zeta: Fraction(1)}), (Fraction(0), {c.omega: Fraction(1)}), P)
    q = acc.build(enc.n_bits)
    logger.debug(f"惩罚 QUBO: {q.n_vars} 个变量, P={P}")
    return q


def default_penalty(B: Basis) -> int:
    """2·‖b_1‖²，b_1 为 LLL 约化后的首行 (λ₁² 的上界)"""
    from app.reduction import lll

    first = lll(B).basis.rows[0]
    return 2 * sum(v * v for v in first)


def qubo_to_ising(q: QuboProblem) -> IsingHamiltonian:
    """s = (1 - z)/2 代入，比特 1 对应 z = -1"""
    constant = q.constant
    h: Dict[int, Fraction] = defaultdict(Fraction)
    J: Dict[Tuple[int, int], Fraction] = {}
    for i, c in q.linear.items():
        constant += c / 2
        h[i] -= c / 2
    for (i, j), c in q.quadratic.items():
        constant += c / 4
        h[i] -= c / 4
        h[j] -= c / 4
        J[(i, j)] = c / 4
    return IsingHamiltonian(
        n_qubits=q.n_vars,
        constant=constant,
        h={k: v for k, v in sorted(h.items()) if v != 0},
        J={k: v for k, v in sorted(J.items()) if v != 0},
    )
