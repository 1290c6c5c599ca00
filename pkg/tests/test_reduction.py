import math

import pytest

from app.enumeration import shortest_vector
from app.errors import ParameterError
from app.lattice import Basis, gram_determinant, gso, orthogonality_defect, prepare_instance
from app.lattice.exact import dot, solve_left
from app.reduction import (
    EnumerationOracle,
    algorithm1_dual_hkz,
    bkz,
    complete_with,
    extended_gcd,
    hkz,
    hkz_defect_bound,
    hkz_defect_bound_log2,
    lll,
    pseudo_hkz,
    size_reduce,
    theorem_qubit_bound,
)


def same_lattice(A: Basis, B: Basis) -> bool:
    if gram_determinant(A) != gram_determinant(B):
        return False
    for row in B.rows:
        if any(c.denominator != 1 for c in solve_left(A.rows, row)):
            return False
    return True


def is_lll_reduced(B: Basis, delta: float = 0.99) -> bool:
    data = gso(B)
    mu, r = data.mu, data.sq_norms
    for i in range(B.n):
        for j in range(i):
            if abs(mu[i, j]) > 0.5 + 1e-9:
                return False
    return all(delta * r[k - 1] <= r[k] + mu[k, k - 1] ** 2 * r[k - 1] + 1e-6 * r[k - 1] for k in range(1, B.n))


def test_size_reduce_small_basis():
    assert size_reduce(Basis.from_rows([[1, 0], [3, 1]])).to_lists() == [[1, 0], [0, 1]]


def test_size_reduce_keeps_orthogonal_basis():
    B = Basis.from_rows([[2, 0], [0, 3]])
    assert size_reduce(B) == B


def test_lll_textbook_basis():
    B = Basis.from_rows([[201, 37], [1648, 297]])
    report = lll(B)
    first = report.basis.rows[0]
    assert math.sqrt(dot(first, first)) <= 2 ** 0.25 * math.sqrt(1279) + 1e-9
    assert same_lattice(B, report.basis)
    assert is_lll_reduced(report.basis)


def test_lll_postconditions_on_qary():
    B = prepare_instance(24, 12, 65537, 24, seed=4)
    assert is_lll_reduced(B)
    report = lll(B)
    assert report.basis == lll(report.basis).basis
    data = gso(report.basis)
    last = report.basis.rows[-1]
    assert dot(last, last) <= 2 ** (B.n - 1) * data.sq_norms[-1] * (1 + 1e-9)


def test_lll_rejects_bad_delta(small_basis):
    with pytest.raises(ParameterError):
        lll(small_basis, delta=0.2)
    with pytest.raises(ParameterError):
        lll(small_basis, delta=1.0)


def test_bkz_full_block_finds_shortest(qary6):
    report = bkz(qary6, qary6.n, EnumerationOracle())
    first = report.basis.rows[0]
    assert dot(first, first) == shortest_vector(qary6).squared_norm
    assert same_lattice(qary6, report.basis)


def test_bkz_rejects_block_size(qary6):
    with pytest.raises(ParameterError):
        bkz(qary6, 1, EnumerationOracle())
    with pytest.raises(ParameterError):
        bkz(qary6, 7, EnumerationOracle())


@pytest.mark.slow
def test_bkz_improves_on_lll():
    better = 0
    for seed in range(5):
        B = prepare_instance(40, 20, 65537, 30, seed=seed)
        if bkz(B, 10, EnumerationOracle()).defect <= lll(B).defect * (1 + 1e-9):
            better += 1
    assert better >= 4


def test_hkz_first_vector_is_shortest(qary6):
    R = hkz(qary6, EnumerationOracle())
    assert dot(R.rows[0], R.rows[0]) == shortest_vector(qary6).squared_norm
    assert same_lattice(qary6, R)
    assert orthogonality_defect(R) <= hkz_defect_bound(R.n)


def test_hkz_identity_and_rank_one():
    I3 = Basis.from_rows([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    R = hkz(I3, EnumerationOracle())
    assert sorted(tuple(abs(x) for x in row) for row in R.rows) == [(0, 0, 1), (0, 1, 0), (1, 0, 0)]
    one = Basis.from_rows([[3, 4]])
    assert hkz(one, EnumerationOracle()) == one


def test_pseudo_hkz_keeps_last_row():
    B = prepare_instance(18, 9, 65537, 8, seed=12)
    oracle = EnumerationOracle()
    R = pseudo_hkz(B, oracle)
    assert R.rows[-1] == lll(B).basis.rows[-1]
    assert same_lattice(B, R)
    assert math.log2(orthogonality_defect(R)) <= (
        B.n * math.log2(B.n) - (2 + 0.5 * math.log2(math.e)) * B.n + 4 * math.log2(B.n)
    )
    with pytest.raises(ParameterError):
        pseudo_hkz(Basis.from_rows([[1, 2]]), oracle)


def test_algorithm1_matches_enumeration(qary6):
    oracle = EnumerationOracle()
    R = algorithm1_dual_hkz(qary6, oracle)
    assert dot(R.rows[0], R.rows[0]) == shortest_vector(qary6).squared_norm
    assert same_lattice(qary6, R)
    calls = [c for c in oracle.history if c.qubits is not None]
    assert calls
    assert all(c.qubits <= theorem_qubit_bound(c.rank) for c in calls)


@pytest.mark.parametrize("seed", range(25))
def test_algorithm1_sweep(seed):
    n = 4 + seed % 5
    B = prepare_instance(16, 8, 65537, n, seed=500 + seed)
    oracle = EnumerationOracle()
    R = algorithm1_dual_hkz(B, oracle)
    assert dot(R.rows[0], R.rows[0]) == shortest_vector(B).squared_norm
    assert same_lattice(B, R)
    assert orthogonality_defect(R) <= hkz_defect_bound(n)
    calls = [c for c in oracle.history if c.qubits is not None]
    assert calls
    assert all(c.qubits <= theorem_qubit_bound(c.rank) for c in calls)


def test_algorithm1_identity():
    R = algorithm1_dual_hkz(Basis.from_rows([[1, 0], [0, 1]]), EnumerationOracle())
    assert sorted(tuple(abs(x) for x in row) for row in R.rows) == [(0, 1), (1, 0)]


def test_hkz_defect_bound_values():
    assert hkz_defect_bound(1) == pytest.approx(math.sqrt(1.325), rel=1e-9)
    values = [hkz_defect_bound_log2(n) for n in range(2, 40)]
    assert all(a < b for a, b in zip(values, values[1:]))
    assert hkz_defect_bound_log2(50) <= 50 * math.log2(50)
    assert hkz_defect_bound(5000) == math.inf


def test_theorem_qubit_bound():
    assert theorem_qubit_bound(8) == pytest.approx(1.5 * 8 * 3 - 2.26 * 8 + 12 + 20)


def test_complete_with_keeps_lattice():
    rows = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    out = complete_with(rows, [2, 3, 5])
    assert out[0] == [2, 3, 5]
    assert abs(gram_determinant(Basis.from_rows(out))) == 1
    with pytest.raises(ParameterError):
        complete_with(rows, [2, 4, 6])


@pytest.mark.parametrize("a,b", [(12, 18), (-7, 3), (0, 5), (5, 0)])
def test_extended_gcd(a, b):
    g, s, t = extended_gcd(a, b)
    assert g == math.gcd(a, b)
    assert s * a + t * b == g
