import itertools

import pytest

from app.encoding import dual_bounds
from app.enumeration import box_search, canonical_sign, enumerate_ball, shortest_vector, shortest_vectors
from app.errors import BudgetExceededError, ParameterError
from app.lattice import Basis, gaussian_heuristic, gram, prepare_instance


def test_enumerate_ball_identity(identity2):
    assert len(enumerate_ball(identity2, 1.0)) == 4
    found = {r.coefficients for r in enumerate_ball(identity2, 1.5)}
    assert found == {(1, 0), (-1, 0), (0, 1), (0, -1), (1, 1), (-1, -1), (1, -1), (-1, 1)}
    assert enumerate_ball(identity2, 0.5) == []


def test_enumerate_ball_rejects_nonpositive_radius(identity2):
    with pytest.raises(ParameterError):
        enumerate_ball(identity2, 0.0)


def test_enumerate_ball_node_budget(qary6):
    with pytest.raises(BudgetExceededError):
        enumerate_ball(qary6, 50 * gaussian_heuristic(qary6), node_budget=10)


def test_shortest_vector_small(small_basis):
    best = shortest_vector(small_basis)
    assert best.squared_norm == 2
    assert best.coefficients == (0, 1)
    assert {r.coefficients for r in shortest_vectors(small_basis)} == {(0, 1), (0, -1), (1, -1), (-1, 1)}


def test_shortest_vector_identity():
    B = Basis.from_rows([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    assert shortest_vector(B).squared_norm == 1


def test_results_are_exact(qary6):
    G = gram(qary6)
    for r in enumerate_ball(qary6, 1.1 * gaussian_heuristic(qary6)):
        assert G.quadratic_form(r.coefficients) == r.squared_norm
        assert canonical_sign(r.coefficients)[0] != 0 or any(r.coefficients)


def test_shortest_norm_invariant_under_unimodular(qary6):
    rows = qary6.to_lists()
    rows[0] = [a + 5 * b for a, b in zip(rows[0], rows[4])]
    rows[3] = [a - b for a, b in zip(rows[3], rows[1])]
    other = Basis.from_rows(rows)
    assert shortest_vector(other).squared_norm == shortest_vector(qary6).squared_norm


def test_enumerate_ball_matches_box_sweep():
    B = prepare_instance(12, 6, 65537, 4, seed=8)
    radius = 1.2 * gaussian_heuristic(B)
    G = gram(B)
    m = dual_bounds(B, radius).m
    squared = radius * radius
    expected = set()
    for x in itertools.product(*(range(-a, a + 1) for a in m)):
        if any(x) and G.quadratic_form(x) <= squared:
            expected.add(x)
    assert {r.coefficients for r in enumerate_ball(B, radius)} == expected


def test_box_search_basics(identity2):
    assert box_search(identity2, [0, 0]) is None
    assert box_search(identity2, [1, 1]).squared_norm == 1
    with pytest.raises(ParameterError):
        box_search(identity2, [1])
    with pytest.raises(BudgetExceededError):
        box_search(identity2, [5000, 5000])


def test_box_search_agrees_with_shortest_vector_on_dual_box():
    for seed in range(5):
        B = prepare_instance(14, 7, 65537, 5, seed=seed)
        best = shortest_vector(B)
        gh = gaussian_heuristic(B)
        if best.squared_norm > gh * gh:
            continue
        found = box_search(B, dual_bounds(B, gh))
        assert found is not None
        assert found.squared_norm == best.squared_norm
