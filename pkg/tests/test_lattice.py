import math
from fractions import Fraction

import numpy as np
import pytest

from app.errors import InstabilityError, ParameterError, RankDeficiencyError
from app.lattice import (
    Basis,
    dual_basis,
    format_basis,
    gaussian_heuristic,
    gram,
    gram_determinant,
    gso,
    orthogonality_defect,
    parse_basis,
    prepare_instance,
    read_basis,
    sample_qary,
    scaled_dual,
    volume,
    write_basis,
)
from app.lattice.exact import dot
from app.lattice.geometry import gso_coefficients


def test_sample_qary_block_structure():
    B = sample_qary(4, 2, 5, seed=1)
    rows = B.to_lists()
    assert [r[:2] for r in rows[:2]] == [[1, 0], [0, 1]]
    assert [r[:2] for r in rows[2:]] == [[0, 0], [0, 0]]
    assert [r[2:] for r in rows[2:]] == [[5, 0], [0, 5]]
    assert all(0 <= x < 5 for r in rows[:2] for x in r[2:])


def test_sample_qary_determinant_and_determinism():
    B = sample_qary(12, 5, 65537, seed=42)
    assert gram_determinant(B) == 65537 ** 10
    assert volume(B) == pytest.approx(65537.0**5)
    assert sample_qary(12, 5, 65537, seed=42) == B
    assert sample_qary(12, 5, 65537, seed=43) != B


@pytest.mark.parametrize("d,k,q", [(4, 0, 5), (4, 4, 5), (4, 2, 1), (4, 2, 2**63), (4, 2, 2**70)])
def test_sample_qary_rejects_bad_parameters(d, k, q):
    with pytest.raises(ParameterError):
        sample_qary(d, k, q, seed=0)


def test_sample_qary_largest_modulus():
    q = 2**63 - 1
    B = sample_qary(3, 1, q, seed=7)
    assert B.rows[-1] == (0, 0, q)
    assert all(0 <= row[-1] < q for row in B.rows[:-1])


def test_prepare_instance_shape_and_rank():
    B = prepare_instance(30, 15, 65537, 16, seed=7)
    assert (B.n, B.d) == (16, 30)
    assert gram_determinant(B) > 0


def test_prepare_instance_rejects_rank_above_dimension():
    with pytest.raises(ParameterError):
        prepare_instance(10, 5, 65537, 11, seed=0)


def test_basis_validation():
    with pytest.raises(RankDeficiencyError):
        Basis.from_rows([[1, 2], [2, 4]])
    with pytest.raises(ParameterError):
        Basis.from_rows([[1, 0], [0]])
    with pytest.raises(ParameterError):
        Basis.from_rows([[1], [2]])


def test_gram(small_basis):
    assert gram(small_basis).entries == ((4, 2), (2, 2))
    assert gram(Basis.from_rows([[1, 0, 0], [0, 1, 0], [0, 0, 1]])).entries == ((1, 0, 0), (0, 1, 0), (0, 0, 1))


def test_dual_basis_values(small_basis):
    assert dual_basis(small_basis).rows == ((Fraction(1, 2), Fraction(-1, 2)), (Fraction(0), Fraction(1)))
    assert dual_basis(Basis.from_rows([[2]])).rows == ((Fraction(1, 2),),)


def test_dual_biorthogonality_rectangular():
    B = prepare_instance(14, 7, 65537, 5, seed=11)
    D = dual_basis(B)
    for i in range(B.n):
        for j in range(B.n):
            assert dot(B.rows[j], D.rows[i]) == (1 if i == j else 0)


def test_scaled_dual_matches_dual(small_basis):
    D, f = scaled_dual(small_basis)
    exact = dual_basis(small_basis)
    for row, dual_row in zip(D.rows, exact.rows):
        assert [f * x for x in row] == list(dual_row)


def test_gso_by_hand():
    data = gso(Basis.from_rows([[1, 1], [0, 2]]))
    assert data.mu[1, 0] == pytest.approx(1.0)
    assert np.allclose(data.vectors[1], [-1.0, 1.0])


def test_gso_reconstruction_and_volume():
    B = prepare_instance(16, 8, 65537, 8, seed=2)
    data = gso(B)
    rows = np.array(B.to_lists(), dtype=float)
    rebuilt = data.mu @ data.vectors
    assert np.allclose(rebuilt, rows, rtol=1e-9, atol=1e-6)
    assert math.prod(np.sqrt(data.sq_norms)) == pytest.approx(volume(B), rel=1e-6)


def test_gso_coefficients_from_gram_agree_with_gso():
    B = prepare_instance(16, 8, 65537, 6, seed=9)
    mu, r = gso_coefficients(gram(B).entries)
    data = gso(B)
    assert np.allclose(mu, data.mu)
    assert np.allclose(r, data.sq_norms)


def test_gso_degenerate_raises():
    B = Basis.trusted([[1, 0], [1, 1e-10]])
    with pytest.raises(InstabilityError):
        gso(B)


def test_volume_values(small_basis):
    assert volume(small_basis) == pytest.approx(2.0)
    assert volume(Basis.from_rows([[1, 0, 0], [0, 1, 0]])) == pytest.approx(1.0)


def test_volume_invariant_under_unimodular_rows():
    B = prepare_instance(14, 7, 65537, 4, seed=5)
    r = B.to_lists()
    r[1] = [a + 3 * b for a, b in zip(r[1], r[0])]
    r[2] = [a - 2 * b for a, b in zip(r[2], r[3])]
    assert volume(Basis.from_rows(r)) == pytest.approx(volume(B), rel=1e-9)


def test_gaussian_heuristic(identity2):
    assert gaussian_heuristic(identity2) == pytest.approx(math.sqrt(1 / (math.pi * math.e)))
    assert gaussian_heuristic(identity2, C=2.0) == pytest.approx(2 * gaussian_heuristic(identity2))


def test_orthogonality_defect():
    assert orthogonality_defect(Basis.from_rows([[1, 0], [0, 1]])) == pytest.approx(1.0)
    assert orthogonality_defect(Basis.from_rows([[1, 1], [0, 2]])) == pytest.approx(math.sqrt(2))
    assert orthogonality_defect(prepare_instance(20, 10, 65537, 10, seed=1)) >= 1.0


def test_basis_text_format(tmp_path, small_basis):
    assert format_basis(small_basis) == "[[2 0]\n[1 1]]\n"
    assert parse_basis("  [ [2   0]\n\n [1 1 ] ]") == small_basis
    path = write_basis(small_basis, tmp_path / "b.txt")
    assert read_basis(path) == small_basis


@pytest.mark.parametrize("text", ["", "[[1 x][0 1]]", "1 0 0 1", "[]"])
def test_basis_text_rejects_garbage(text):
    with pytest.raises(ParameterError):
        parse_basis(text)
