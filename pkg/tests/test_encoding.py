import itertools
import json
import math
from fractions import Fraction

import pytest

from app.encoding import (
    BoundsVector,
    MappingSpec,
    any_in_box,
    build_penalty_qubo,
    build_qubo,
    decode_bitstring,
    decode_index,
    default_penalty,
    dual_bounds,
    dump_hamiltonian,
    encode_integers,
    inclusion_probability,
    inclusion_reference,
    load_hamiltonian,
    naive_mapping,
    penalty_term,
    penalty_variable_bound,
    qubit_budget_bound,
    qubit_count,
    qubo_to_ising,
)
from app.enumeration import EnumResult, box_search, enumerate_ball, shortest_vector
from app.errors import LengthMismatchError, ParameterError, UnsupportedBoundError
from app.lattice import Basis, gaussian_heuristic, gram, prepare_instance


def all_bits(n: int):
    return itertools.product((0, 1), repeat=n)


def test_dual_bounds_values(identity2, small_basis):
    assert dual_bounds(identity2, 1.0).m == (1, 1)
    assert dual_bounds(small_basis, 2.0).m == (1, 2)
    with pytest.raises(ParameterError):
        dual_bounds(identity2, 0.0)


@pytest.mark.parametrize("seed", range(50))
def test_dual_bounds_contain_every_ball_point(seed):
    n = 4 + seed % 5
    B = prepare_instance(16, 8, 65537, n, seed=seed)
    A = gaussian_heuristic(B)
    bounds = dual_bounds(B, A)
    assert all(bounds.contains(r.coefficients) for r in enumerate_ball(B, A))


def test_qubit_count_values():
    assert qubit_count(BoundsVector(m=(1, 1))) == 4
    assert qubit_count(BoundsVector(m=(3,))) == 3
    assert qubit_count(BoundsVector(m=(0, 5))) == 4


def test_qubit_count_matches_plain_encoding():
    for m in [(1, 2, 3), (0, 7, 1), (4, 4), (12,)]:
        bounds = BoundsVector(m=m)
        assert qubit_count(bounds) == encode_integers(bounds).n_bits
        assert qubit_count(bounds) <= 2 * len(m) + math.log2(math.prod(max(v, 1) for v in m)) + 1


def test_qubit_budget_bound():
    assert qubit_budget_bound(2, 1.0, 1.0) == pytest.approx(4 + math.log2(1 / (math.pi * math.e)))
    assert qubit_budget_bound(10, 8.0) > qubit_budget_bound(10, 2.0)
    with pytest.raises(ParameterError):
        qubit_budget_bound(10, 0.5)


def test_naive_mapping_uniform():
    bounds = naive_mapping(4, 8, "uniform")
    assert bounds.m == (1, 1, 1, 1)
    assert qubit_count(bounds) == 8
    one_bit = naive_mapping(4, 4, "uniform")
    assert one_bit.bits == (1, 1, 1, 1)
    assert qubit_count(one_bit) == 4
    with pytest.raises(ParameterError):
        naive_mapping(4, 3, "uniform")


def test_naive_mapping_uniform_random():
    bounds = naive_mapping(4, 10, "uniform-random", seed=5)
    assert sorted(bounds.m) == [1, 1, 3, 3]
    assert sorted(bounds.bits) == [2, 2, 3, 3]
    assert qubit_count(bounds) == 10
    assert naive_mapping(4, 10, "uniform-random", seed=5) == bounds


def test_naive_mapping_dual_scaled(qary6):
    unlimited = naive_mapping(qary6.n, None, "dual-scaled", B=qary6)
    assert unlimited.m == dual_bounds(qary6, gaussian_heuristic(qary6)).m
    limited = naive_mapping(qary6.n, qary6.n, "dual-scaled", B=qary6)
    assert qubit_count(limited) <= qary6.n
    with pytest.raises(ParameterError):
        naive_mapping(qary6.n, 10, "dual-scaled")


def test_inclusion_probability_with_minkowski_radius():
    def instances(i):
        return prepare_instance(14, 7, 65537, 5, seed=100 + i), i

    estimate = inclusion_probability(instances, 6, MappingSpec(strategy="dual-lemma", radius_factor=4.2))
    assert estimate.probability == 1.0
    assert estimate.evaluated == 6
    assert estimate.failures == 0


def test_inclusion_reference():
    assert inclusion_reference(15) == pytest.approx(0.80)
    assert inclusion_reference(25) == pytest.approx(0.50)
    assert inclusion_reference(27) is None


def test_any_in_box():
    bounds = BoundsVector(m=(1, 2))
    inside = EnumResult(coefficients=(-1, 2), squared_norm=5)
    outside = EnumResult(coefficients=(2, 0), squared_norm=4)
    assert any_in_box(bounds, [outside, inside])
    assert not any_in_box(bounds, [outside])
    assert not any_in_box(bounds, [])


@pytest.mark.slow
@pytest.mark.parametrize("rank,expected", [(15, 0.80), (20, 0.70), (25, 0.50)])
def test_one_bit_inclusion_rates(rank, expected):
    def instances(i):
        seed = 1000 * rank + i
        return prepare_instance(rank + 10, (rank + 10) // 2, 65537, rank, seed=seed), seed

    estimate = inclusion_probability(instances, 256, MappingSpec(strategy="uniform"))
    assert abs(estimate.probability - expected) <= 0.08


def test_plain_encoding_one_bound():
    enc = encode_integers(BoundsVector(m=(1,)))
    assert enc.n_bits == 2
    assert {bits: decode_bitstring(bits, enc)[0] for bits in ["00", "01", "10", "11"]} == {
        "00": -1,
        "01": 0,
        "10": 0,
        "11": 1,
    }


def test_plain_encoding_two_bound():
    enc = encode_integers(BoundsVector(m=(2,)))
    assert enc.n_bits == 3
    values = [decode_bitstring(bits, enc)[0] for bits in all_bits(3)]
    assert sorted(set(values)) == [-2, -1, 0, 1, 2]
    assert len(values) - len(set(values)) == 3


def test_plain_encoding_completeness():
    for a in range(1, 128):
        enc = encode_integers(BoundsVector(m=(a,)))
        layout = enc.coordinates[0]
        values = {layout.value(bits) for bits in all_bits(enc.n_bits)}
        assert values == set(range(-a, a + 1))


def test_one_bit_layout():
    enc = encode_integers(naive_mapping(3, 3, "uniform"))
    assert enc.n_bits == 3
    assert decode_bitstring("101", enc) == (1, 0, 1)


def test_decode_errors_and_index():
    enc = encode_integers(BoundsVector(m=(1, 1)))
    assert decode_bitstring([0, 0, 0, 0], enc) == (-1, -1)
    with pytest.raises(LengthMismatchError):
        decode_bitstring("010", enc)
    with pytest.raises(ParameterError):
        decode_bitstring("01x0", enc)
    for index in range(16):
        bits = [index >> k & 1 for k in range(4)]
        assert decode_index(index, enc) == decode_bitstring(bits, enc)


def test_pinned_coordinate():
    enc = encode_integers(BoundsVector(m=(0, 1)))
    assert enc.n_bits == 2
    assert decode_bitstring("11", enc) == (0, 1)


def test_penalty_encoding_layout():
    bounds = BoundsVector(m=(2, 2, 2, 2))
    enc = encode_integers(bounds, "penalty")
    assert enc.n_bits == 14
    assert len(enc.aux) == 2
    assert penalty_variable_bound(bounds) == 18
    assert penalty_variable_bound(BoundsVector(m=(3, 5, 6))) == 4 * 3 - 2 + 1 + 2 + 2
    assert decode_bitstring([0] * enc.n_bits, enc) == (-2, -2, -2, -2)
    with pytest.raises(UnsupportedBoundError):
        encode_integers(BoundsVector(m=(2, 1)), "penalty")


def test_penalty_zero_forces_zeta():
    enc = encode_integers(BoundsVector(m=(3, 4, 5)), "penalty")
    seen = [set() for _ in enc.coordinates]
    for bits in all_bits(enc.n_bits):
        x = decode_bitstring(bits, enc)
        for coord, value, values in zip(enc.coordinates, x, seen):
            if value == 0:
                assert bits[coord.zeta] == 1
            values.add(value)
    for coord, values in zip(enc.coordinates, seen):
        assert values == set(range(-coord.bound, coord.bound + 1))


@pytest.mark.parametrize("a", range(2, 33))
def test_penalty_decode_range(a):
    enc = encode_integers(BoundsVector(m=(a,)), "penalty")
    layout = enc.coordinates[0]
    values = [decode_bitstring(bits, enc)[0] for bits in all_bits(enc.n_bits)]
    assert set(values) == set(range(-a, a + 1))
    assert (layout.low, layout.high) == (-a, a)
    for index in range(1 << enc.n_bits):
        assert abs(decode_index(index, enc)[0]) <= a


def test_penalty_zeta_omega_both_set():
    enc = encode_integers(BoundsVector(m=(3,)), "penalty")
    layout = enc.coordinates[0]
    assert layout.weights == (3, 4, 1, 1)
    assert decode_bitstring([1, 1, 0, 0], enc) == (0,)
    assert decode_bitstring([1, 1, 1, 1], enc) == (2,)
    assert decode_bitstring([0, 1, 1, 1], enc) == (3,)
    assert layout.is_forbidden((1, 1, 0, 0))
    assert not layout.is_forbidden((0, 1, 1, 1))


def test_penalty_term_values():
    assert penalty_term((1, 1), ()) == 1
    assert min(penalty_term((1, 0, 1), (z,)) for z in (0, 1)) == 0


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_penalty_minimum_is_product_of_zeta(n):
    for zeta in all_bits(n):
        best = min(penalty_term(zeta, z) for z in all_bits(max(n - 2, 0)))
        assert best == math.prod(zeta)


def test_build_qubo_single_coordinate():
    enc = encode_integers(BoundsVector(m=(1,)))
    q = build_qubo(gram(Basis.from_rows([[2]])), enc)
    assert q.constant == 4
    assert q.linear == {0: -4, 1: -4}
    assert q.quadratic == {(0, 1): 8}
    h = qubo_to_ising(q)
    assert h.constant == 2
    assert h.h == {}
    assert h.J == {(0, 1): 2}


def test_qubo_to_ising_constant_only():
    enc = encode_integers(BoundsVector(m=(0,)))
    h = qubo_to_ising(build_qubo([[5]], enc))
    assert (h.constant, h.h, h.J) == (0, {}, {})


def test_hamiltonian_triple_equality():
    checked = 0
    for seed in range(10):
        B = prepare_instance(12, 6, 65537, 4, seed=seed)
        G = gram(B)
        enc = encode_integers(naive_mapping(4, 10, "uniform-random", seed=seed))
        q = build_qubo(G, enc)
        h = qubo_to_ising(q)
        for bits in all_bits(enc.n_bits):
            x = decode_bitstring(bits, enc)
            norm = G.quadratic_form(x)
            assert q.value(bits) == norm
            assert h.value(bits) == norm
            checked += 1
    assert checked == 10 * 2**10


@pytest.mark.slow
@pytest.mark.parametrize("seed", range(100))
def test_hamiltonian_triple_equality_sweep(seed):
    B = prepare_instance(12, 6, 65537, 3, seed=seed)
    G = gram(B)
    plain = encode_integers(naive_mapping(3, 11, "uniform-random", seed=seed))
    q = build_qubo(G, plain)
    h = qubo_to_ising(q)
    for bits in all_bits(plain.n_bits):
        norm = G.quadratic_form(decode_bitstring(bits, plain))
        assert q.value(bits) == norm
        assert h.value(bits) == norm
    m = tuple(2 + (seed >> k & 1) for k in range(3))
    enc = encode_integers(BoundsVector(m=m), "penalty")
    assert enc.n_bits <= 14
    P = default_penalty(B)
    q = build_penalty_qubo(G, enc, P)
    h = qubo_to_ising(q)
    for bits in all_bits(enc.n_bits):
        assert h.value(bits) == q.value(bits)
        if any(bits[c.zeta] and bits[c.omega] for c in enc.coordinates):
            continue
        zeta = [bits[c.zeta] for c in enc.coordinates]
        aux = [bits[k] for k in enc.aux]
        norm = G.quadratic_form(decode_bitstring(bits, enc))
        assert q.value(bits) == norm + P * penalty_term(zeta, aux)


def test_build_qubo_length_mismatch(identity2):
    with pytest.raises(LengthMismatchError):
        build_qubo(gram(identity2), encode_integers(BoundsVector(m=(1,))))


def test_penalty_qubo_errors(identity2):
    plain = encode_integers(BoundsVector(m=(2, 2)))
    with pytest.raises(ParameterError):
        build_penalty_qubo(gram(identity2), plain, 10)
    penalty = encode_integers(BoundsVector(m=(2, 2)), "penalty")
    with pytest.raises(ParameterError):
        build_penalty_qubo(gram(identity2), penalty, 0)


def test_penalty_qubo_zero_vector_costs_p(identity2):
    enc = encode_integers(BoundsVector(m=(2, 2)), "penalty")
    q = build_penalty_qubo(gram(identity2), enc, 7)
    zero = [0] * enc.n_bits
    for c in enc.coordinates:
        zero[c.zeta] = 1
    assert decode_bitstring(zero, enc) == (0, 0)
    assert q.value(zero) == 7


@pytest.mark.parametrize("m", [(3,), (2, 3), (2, 2, 2)])
def test_penalty_qubo_forbidden_states(m):
    rows = [[3, 1, 0], [1, 4, 2], [0, 1, 5]][: len(m)]
    B = Basis.from_rows([r[: len(m)] for r in rows])
    G = gram(B)
    enc = encode_integers(BoundsVector(m=m), "penalty")
    P = 11
    q = build_penalty_qubo(G, enc, P)
    h = qubo_to_ising(q)
    for bits in all_bits(enc.n_bits):
        forbidden = any(bits[c.zeta] and bits[c.omega] for c in enc.coordinates)
        if forbidden:
            assert q.value(bits) >= P
        else:
            zeta = [bits[c.zeta] for c in enc.coordinates]
            aux = [bits[k] for k in enc.aux]
            x = decode_bitstring(bits, enc)
            assert q.value(bits) == G.quadratic_form(x) + P * penalty_term(zeta, aux)
        assert h.value(bits) == q.value(bits)


def test_penalty_qubo_ground_state():
    seen = 0
    for seed in range(6):
        B = prepare_instance(12, 6, 65537, 3, seed=seed)
        G = gram(B)
        enc = encode_integers(BoundsVector(m=(2, 2, 2)), "penalty")
        P = default_penalty(B)
        q = build_penalty_qubo(G, enc, P)
        ground = min(q.value(bits) for bits in all_bits(enc.n_bits))
        in_box = box_search(B, (2, 2, 2))
        lam = shortest_vector(B).squared_norm
        assert P > lam
        assert lam <= ground <= in_box.squared_norm
        if in_box.squared_norm == lam:
            assert ground == lam
            seen += 1
    assert seen >= 1


def test_default_penalty(small_basis):
    assert default_penalty(small_basis) == 4


def test_hamiltonian_interchange(small_basis):
    enc = encode_integers(dual_bounds(small_basis, 2.0))
    h = qubo_to_ising(build_qubo(gram(small_basis), enc))
    text = dump_hamiltonian(h, enc)
    payload = json.loads(text)
    assert payload["kind"] == "ising"
    assert all("/" in t["c"] for t in payload["linear"])
    loaded, loaded_enc = load_hamiltonian(text)
    assert loaded == h
    assert loaded_enc == enc
    assert isinstance(loaded.constant, Fraction)


@pytest.mark.parametrize("text", ["not json", "{}", '{"kind": "cubic", "n_vars": 1, "constant": "0/1", "linear": [], "quadratic": [], "encoding": {"scheme": "plain", "coordinates": [], "n_bits": 0}}'])
def test_load_hamiltonian_rejects_bad_input(text):
    with pytest.raises(ParameterError):
        load_hamiltonian(text)
