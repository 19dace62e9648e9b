import numpy as np
import pytest
from numpy.testing import assert_allclose

from core import DimensionError, DomainError, NotUnitaryError, basis_state, is_unitary, make_rng, random_unitary
from gates import (Circuit, abc_factors, circuit_from_json, circuit_to_json, circuit_unitary, controlled_matrix,
                   controlled_u_cost, dft_unitary, euler_decompose, gate_names, ghz_circuit, qft_circuit,
                   qft_gate_counts, run, standard_gate, synthesize_controlled_u, unitary_sqrt, SIGMA_X)
from gates.synthesis import mcx_circuit


@pytest.mark.parametrize("name", gate_names())
def test_every_standard_gate_is_unitary(name):
    gate = standard_gate(name, (0.37,))
    assert is_unitary(gate.matrix)
    assert gate.matrix.shape == (2 ** gate.arity,) * 2


def test_unknown_or_underspecified_gates():
    with pytest.raises(DomainError):
        standard_gate("nope")
    with pytest.raises(DomainError):
        standard_gate("RX")
    with pytest.raises(DomainError):
        standard_gate("RX", (np.inf,))
    with pytest.raises(DomainError):
        standard_gate("CNOT", local_dim=3)


def test_gate_matrices_are_frozen():
    gate = standard_gate("H")
    with pytest.raises(ValueError):
        gate.matrix[0, 0] = 0


def test_fredkin_swaps_low_pair_under_control():
    out = run(Circuit(3).add("FREDKIN", 2, 1, 0), basis_state("101", 3))
    assert abs(out.amplitude("110")) == pytest.approx(1.0)


def test_deutsch_gate_at_half_pi_is_toffoli():
    assert_allclose(standard_gate("DEUTSCH", (np.pi / 2,)).matrix, standard_gate("TOFFOLI").matrix, atol=1e-12)


def test_circuit_rejects_mismatched_targets():
    c = Circuit(2)
    with pytest.raises(DimensionError):
        c.add("CNOT", 0)
    with pytest.raises(DimensionError):
        c.add("X", 2)


def test_ghz_circuit():
    out = run(ghz_circuit(), basis_state(0, 3))
    assert out.amplitude("000") == pytest.approx(1 / np.sqrt(2))
    assert out.amplitude("111") == pytest.approx(1 / np.sqrt(2))


def test_circuit_unitary_agrees_with_run(rng):
    c = Circuit(3).add("H", 0).add("CNOT", 0, 2).add("RY", 1, params=(0.4,)).add("TOFFOLI", 2, 0, 1)
    psi = basis_state("011", 3)
    assert_allclose(circuit_unitary(c) @ psi.amplitudes, run(c, psi).amplitudes, atol=1e-12)


def test_inverse_undoes_circuit():
    c = Circuit(2).add("H", 1).add("CPH", 1, 0, params=(0.9,)).add("SQRT_SWAP", 0, 1)
    assert_allclose(circuit_unitary(c.inverse()) @ circuit_unitary(c), np.eye(4), atol=1e-12)


def test_circuit_json_keeps_custom_matrices(rng):
    c = Circuit(2).add("CNOT", 1, 0)
    c.append(standard_gate("RZ", (0.3,)).dagger(), (1,))
    back = circuit_from_json(circuit_to_json(c))
    assert_allclose(circuit_unitary(back), circuit_unitary(c), atol=1e-12)


@pytest.mark.parametrize("K", range(1, 7))
def test_qubit_qft_matches_dft(K):
    assert_allclose(circuit_unitary(qft_circuit(K)), dft_unitary(2 ** K), atol=1e-10)


@pytest.mark.parametrize("K", range(1, 4))
def test_qutrit_qft_matches_dft(K):
    assert_allclose(circuit_unitary(qft_circuit(K, 3)), dft_unitary(3 ** K), atol=1e-10)


@pytest.mark.parametrize("K", [1, 2, 5, 8])
def test_qft_gate_counts(K):
    counts = qft_gate_counts(qft_circuit(K))
    assert counts == {"hadamard": K, "cphase": K * (K - 1) // 2, "swap": K // 2}


def test_euler_decomposition_reconstructs(rng):
    for _ in range(20):
        u = random_unitary(2, rng)
        assert_allclose(euler_decompose(u).matrix(), u, atol=1e-10)


def test_euler_decomposition_of_diagonal_and_antidiagonal():
    assert_allclose(euler_decompose(np.diag([1j, 1])).matrix(), np.diag([1j, 1]), atol=1e-12)
    assert_allclose(euler_decompose(SIGMA_X).matrix(), SIGMA_X, atol=1e-12)


def test_abc_factors(rng):
    u = random_unitary(2, rng)
    ubar = u / np.sqrt(np.linalg.det(u))
    u1, u2, u3 = abc_factors(ubar)
    assert_allclose(u1 @ u2 @ u3, np.eye(2), atol=1e-10)
    assert_allclose(u1 @ SIGMA_X @ u2 @ SIGMA_X @ u3, ubar, atol=1e-10)
    with pytest.raises(DomainError):
        abc_factors(1j * np.eye(2))


def test_unitary_sqrt(rng):
    u = random_unitary(2, rng)
    w = unitary_sqrt(u)
    assert_allclose(w @ w, u, atol=1e-10)
    assert is_unitary(w)


@pytest.mark.parametrize("controls", [1, 2, 3, 4])
def test_controlled_synthesis_is_exact(controls):
    rng = make_rng(100 + controls)
    for _ in range(20):
        u = random_unitary(2, rng)
        circuit = synthesize_controlled_u(u, controls)
        assert_allclose(circuit_unitary(circuit), controlled_matrix(u, controls), atol=1e-9)
        assert len(circuit) == controlled_u_cost(controls)
        assert max(g.arity for g, _ in circuit.steps) <= 2


def test_controlled_synthesis_rejects_non_unitary():
    with pytest.raises(NotUnitaryError):
        synthesize_controlled_u(np.array([[1, 1], [0, 1]]), 2)
    with pytest.raises(DomainError):
        synthesize_controlled_u(np.eye(2), 0)


def test_borrowed_qubit_mcx_restores_work_qubits():
    # controls 4,3,2 onto 0 with site 1 borrowed in an arbitrary state
    u = circuit_unitary(mcx_circuit([4, 3, 2], 0, [1], 5))
    for index in range(32):
        bits = [(index >> k) & 1 for k in range(5)]
        flipped = index ^ 1 if bits[4] and bits[3] and bits[2] else index
        assert abs(u[flipped, index]) == pytest.approx(1.0)
