"""
Tests for the recursive QFT circuit and its gates.
"""

import numpy as np
import pytest

from heisenberg_hsp.data import GroupParams
from heisenberg_hsp.qft_circuit import (
    Circuit,
    Gate,
    GateKind,
    adder_v,
    apply_circuit,
    build_circuit,
    circuit_unitary,
    dump_circuit,
    gate_matrix,
    parse_circuit,
    pk_matrix,
    qft_from_pk,
    qft_zp,
    qft_zp_scaled,
    verify_circuit,
)
from heisenberg_hsp.reps import qft_dense

CASES = [(2, 1), (2, 2), (3, 1), (3, 2), (5, 1)]


def test_circuit_matches_dense_qft():
    for p, n in CASES:
        assert verify_circuit(GroupParams(p, n)) <= 1e-9, (p, n)


def test_permuted_wires_break_the_equality():
    params = GroupParams(3, 1)
    assert verify_circuit(params, [2, 1, 0]) > 1e-3


def test_n0_is_a_single_qft_on_the_center():
    params = GroupParams(5, 0)
    c = build_circuit(params)
    assert len(c) == 1 and c.gates[0].kind is GateKind.QFT
    assert np.allclose(circuit_unitary(c), qft_zp(5))


def test_gate_count_is_linear_in_n():
    for n in range(1, 5):
        assert len(build_circuit(GroupParams(3, n))) == 1 + 4 * n


def test_empty_circuit_is_identity():
    assert np.allclose(circuit_unitary(Circuit(3, 2, ())), np.eye(9))


def test_adder_v_permutation():
    V = adder_v(3)
    for u in range(3):
        for v in range(3):
            col = np.zeros(9)
            col[u * 3 + v] = 1
            assert np.argmax(V @ col) == ((u + v) % 3) * 3 + v


def test_pk_gives_scaled_qft():
    for p in (3, 5, 7):
        for k in range(1, p):
            assert np.allclose(qft_from_pk(p, k), qft_zp_scaled(p, k))
            assert np.allclose(pk_matrix(p, k) @ pk_matrix(p, k).conj().T, np.eye(p))


def test_conditioned_adder_is_identity_on_zero():
    p = 3
    M = gate_matrix(Gate(GateKind.ADDER_V, (0, 1, 2)), p)
    assert np.allclose(M @ M.conj().T, np.eye(27))
    for u in range(p):
        for v in range(p):
            state = np.zeros(27)
            state[(u * p + v) * p] = 1
            assert np.allclose(M @ state, state)


def test_apply_circuit_on_a_ket():
    params = GroupParams(3, 2)
    rng = np.random.default_rng(0)
    psi = rng.normal(size=params.order) + 1j * rng.normal(size=params.order)
    assert np.allclose(apply_circuit(build_circuit(params), psi), qft_dense(params) @ psi)


def test_gate_list_text_round_trip():
    c = build_circuit(GroupParams(3, 2))
    parsed = parse_circuit(dump_circuit(c))
    assert parsed.gates == c.gates and parsed.num_wires == c.num_wires
    with pytest.raises(ValueError):
        parse_circuit("QFT 0\n")


def test_gate_validation():
    with pytest.raises(ValueError):
        Gate(GateKind.QFT, (0, 1))
    with pytest.raises(ValueError):
        Gate(GateKind.ADDER_V, (1, 1))
    with pytest.raises(ValueError):
        Circuit(3, 1, (Gate(GateKind.QFT, (2,)),))


if __name__ == '__main__':
    tests = [(name, fn) for name, fn in sorted(globals().items()) if name.startswith("test_") and callable(fn)]
    failures = 0
    for name, fn in tests:
        try:
            fn()
            print(f"PASS  {name}")
        except Exception as err:
            failures += 1
            print(f"FAIL  {name}: {type(err).__name__}: {err}")
    print(f"\n{'=' * 60}\n{len(tests) - failures}/{len(tests)} passed\n{'=' * 60}")
