"""精确整数/有理数线性代数 (行列式、秩、逆矩阵)。

格基、Gram 矩阵、对偶基的正确性依赖这些精确运算，浮点只用于 GSO。
"""
from fractions import Fraction
from math import gcd
from typing import List, Sequence, Union

from app.errors import RankDeficiencyError

Number = Union[int, Fraction]


def dot(u: Sequence[Number], v: Sequence[Number]) -> Number:
    """精确内积"""
    return sum(a * b for a, b in zip(u, v))


def integer_rank(rows: Sequence[Sequence[int]]) -> int:
    """无分数消元求整数矩阵的秩"""
    matrix = [list(r) for r in rows]
    n = len(matrix)
    d = len(matrix[0]) if matrix else 0
    rank = 0
    for col in range(d):
        pivot = next((i for i in range(rank, n) if matrix[i][col] != 0), None)
        if pivot is None:
            continue
        matrix[rank], matrix[pivot] = matrix[pivot], matrix[rank]
        p = matrix[rank][col]
        for i in range(rank + 1, n):
            f = matrix[i][col]
            if f == 0:
                continue
            row = [a * p - f * b for a, b in zip(matrix[i], matrix[rank])]
            g = 0
            for a in row:
                g = gcd(g, a)
            matrix[i] = [a // g for a in row] if g > 1 else row
        rank += 1
        if rank == n:
            break
    return rank


def bareiss_determinant(matrix: Sequence[Sequence[int]]) -> int:
    """Bareiss 无分数消元计算整数方阵的行列式"""
    m = [list(r) for r in matrix]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        pivot = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            row_i = m[i]
            row_k = m[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - mik * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign * m[n - 1][n - 1]


def leading_minors_positive(matrix: Sequence[Sequence[int]]) -> bool:
    """Sylvester 判据: 对称整数矩阵的全部顺序主子式为正"""
    m = [list(r) for r in matrix]
    n = len(m)
    prev = 1
    for k in range(n):
        # 不换行的 Bareiss 中 m[k][k] 恰为第 k+1 阶顺序主子式
        if m[k][k] <= 0:
            return False
        pivot = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * pivot - mik * m[k][j]) // prev
        prev = pivot
    return True


def fraction_inverse(matrix: Sequence[Sequence[Number]]) -> List[List[Fraction]]:
    """Gauss-Jordan 求有理数方阵的精确逆"""
    n = len(matrix)
    aug = [
        [Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
        for i, row in enumerate(matrix)
    ]
    for col in range(n):
        pivot = next((i for i in range(col, n) if aug[i][col] != 0), None)
        if pivot is None:
            raise RankDeficiencyError("矩阵奇异，无法求逆")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        p = aug[col][col]
        if p != 1:
            aug[col] = [x / p for x in aug[col]]
        row_c = aug[col]
        for i in range(n):
            if i == col:
                continue
            f = aug[i][col]
            if f == 0:
                continue
            aug[i] = [a - f * b for a, b in zip(aug[i], row_c)]
    return [row[n:] for row in aug]


def solve_left(rows: Sequence[Sequence[Number]], target: Sequence[Number]) -> List[Fraction]:
    """求系数 c 使 c·rows = target (rows 行满秩，target 在其行空间中)"""
    gram_rows = [[dot(a, b) for b in rows] for a in rows]
    rhs = [dot(target, r) for r in rows]
    inv = fraction_inverse(gram_rows)
    return [sum(inv[i][j] * rhs[j] for j in range(len(rhs))) for i in range(len(rhs))]
