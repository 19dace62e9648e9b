import numpy as np
import pytest
from numpy.testing import assert_allclose

from core import (CapExceededError, DensityMatrix, DimensionError, InvalidStateError, NotUnitaryError, StateVector,
                  apply_unitary, basis_state, bloch_angles, bloch_state, density_from_state, dumps,
                  equal_up_to_phase, expectation, fidelity_to_pure, loads, make_rng, measure, mixture, overlap,
                  partial_trace, probabilities, project, random_density, random_state, random_unitary, sample_counts,
                  state_from_json, state_to_json, tensor, is_unitary)
from tests.conftest import binomial_bounds
from utils import MemoryManager

X = np.array([[0, 1], [1, 0]], dtype=complex)
CNOT = np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex)
BELL = StateVector(2, 2, np.array([1, 0, 0, 1]) / np.sqrt(2))


def test_basis_state_string_and_digit_forms():
    assert basis_state("10", 2).amplitude(2) == 1
    assert basis_state([1, 0], 2).amplitude(1) == 1
    assert basis_state(5, 2, local_dim=3).label(5) == "12"


def test_basis_state_out_of_range():
    with pytest.raises(DimensionError):
        basis_state(4, 2)


def test_state_validation():
    with pytest.raises(InvalidStateError):
        StateVector(2, 1, [1, 1])
    with pytest.raises(DimensionError):
        StateVector(2, 2, [1, 0])
    with pytest.raises(InvalidStateError):
        StateVector(2, 1, [np.nan, 0])


def test_amplitudes_are_read_only():
    psi = basis_state(0, 1)
    with pytest.raises(ValueError):
        psi.amplitudes[0] = 0


def test_site_zero_is_least_significant():
    psi = apply_unitary(basis_state(0, 2), X, [0])
    assert psi.label(int(np.argmax(np.abs(psi.amplitudes)))) == "01"


def test_two_site_targets_are_most_significant_first():
    out = apply_unitary(basis_state("10", 2), CNOT, [1, 0])
    assert abs(out.amplitude("11")) == pytest.approx(1.0)
    unchanged = apply_unitary(basis_state("01", 2), CNOT, [1, 0])
    assert abs(unchanged.amplitude("01")) == pytest.approx(1.0)


def test_apply_unitary_rejects_bad_operators():
    psi = basis_state(0, 2)
    with pytest.raises(NotUnitaryError):
        apply_unitary(psi, np.array([[1, 1], [0, 1]]), [0])
    with pytest.raises(DimensionError):
        apply_unitary(psi, CNOT, [0, 0])
    with pytest.raises(DimensionError):
        apply_unitary(psi, X, [2])
    with pytest.raises(DimensionError):
        apply_unitary(psi, CNOT, [0])


def test_tensor_puts_first_factor_high():
    psi = tensor(basis_state(1, 1), basis_state(0, 1))
    assert psi.amplitude("10") == 1


def test_bloch_angles_invert_bloch_state():
    theta, phi = bloch_angles(bloch_state(1.0, 0.5))
    assert theta == pytest.approx(1.0)
    assert phi == pytest.approx(0.5)


def test_probabilities_follow_target_order():
    psi = basis_state("10", 2)
    assert_allclose(probabilities(psi, [1, 0]), [0, 0, 1, 0])
    assert_allclose(probabilities(psi, [0, 1]), [0, 1, 0, 0])
    assert_allclose(probabilities(psi, [1]), [0, 1])


def test_measure_basis_state_is_deterministic(rng):
    record = measure(basis_state("101", 3), [2, 1, 0], rng)
    assert record.outcome == "101"
    assert record.probability == pytest.approx(1.0)


def test_measuring_one_half_of_a_bell_pair_collapses_the_other(rng):
    record = measure(BELL, [1], rng)
    assert probabilities(record.post_state, [0])[int(record.outcome)] == pytest.approx(1.0)


def test_project_renormalizes():
    post = project(BELL, [1], "1")
    assert abs(post.amplitude("11")) == pytest.approx(1.0)


def test_born_frequencies_within_four_sigma(rng):
    theta = 1.2
    shots = 20_000
    counts = sample_counts(bloch_state(theta, 0.3), [0], shots, rng)
    low, high = binomial_bounds(shots, np.sin(theta / 2) ** 2)
    assert low <= counts["1"] <= high
    assert counts["0"] + counts["1"] == shots


def test_sampling_is_reproducible_for_a_seed():
    psi = random_state(3, make_rng(5))
    first = sample_counts(psi, [2, 1, 0], 500, make_rng(9))
    second = sample_counts(psi, [2, 1, 0], 500, make_rng(9))
    assert first == second


def test_rng_split_gives_distinct_reproducible_children():
    a, b = make_rng(3).split(2)
    a2, _ = make_rng(3).split(2)
    assert a.integers(0, 2 ** 62) == a2.integers(0, 2 ** 62)
    assert a.random() != b.random()
    with pytest.raises(ValueError):
        make_rng(-1)


def test_rng_draws_below_bounds_past_signed_range():
    big = 2 ** 64 - 59
    draws = [make_rng(11).below(big) for _ in range(2)]
    assert draws[0] == draws[1]
    assert 0 <= draws[0] < big
    assert all(0 <= make_rng(seed).below(7) < 7 for seed in range(20))


def test_random_unitary_is_unitary(rng):
    assert is_unitary(random_unitary(4, rng))


def test_overlap_and_phase_equality():
    psi = bloch_state(0.7, 0.2)
    shifted = StateVector(2, 1, np.exp(0.4j) * psi.amplitudes)
    assert equal_up_to_phase(psi, shifted)
    assert abs(overlap(psi, shifted)) == pytest.approx(1.0)
    assert not equal_up_to_phase(basis_state(0, 1), basis_state(1, 1))


def test_density_matrix_validation():
    with pytest.raises(InvalidStateError):
        DensityMatrix(np.array([[0.5, 0.5j], [0.5j, 0.5]]))
    with pytest.raises(InvalidStateError):
        DensityMatrix(np.eye(2))
    with pytest.raises(InvalidStateError):
        DensityMatrix(np.diag([1.5, -0.5]))
    with pytest.raises(DimensionError):
        DensityMatrix(np.ones((2, 3)) / 2)


def test_partial_trace_of_bell_pair_is_maximally_mixed():
    reduced = partial_trace(density_from_state(BELL), [2, 2], [0])
    assert_allclose(reduced.entries, np.eye(2) / 2, atol=1e-12)


def test_partial_trace_keeps_factor_order():
    rho = density_from_state(basis_state("01", 2))
    assert_allclose(partial_trace(rho, [2, 2], [0]).entries, np.diag([1, 0]), atol=1e-12)
    assert_allclose(partial_trace(rho, [2, 2], [1]).entries, np.diag([0, 1]), atol=1e-12)
    with pytest.raises(DimensionError):
        partial_trace(rho, [2, 3], [0])


def test_partial_trace_preserves_trace(rng):
    rho = random_density(12, rng)
    for keep in ([0], [1], [0, 1]):
        assert np.trace(partial_trace(rho, [3, 4], keep).entries).real == pytest.approx(1.0)


def test_fidelity_and_expectation():
    rho = mixture([0.25, 0.75], [density_from_state(basis_state(0, 1)), density_from_state(basis_state(1, 1))])
    assert fidelity_to_pure(rho, basis_state(1, 1)) == pytest.approx(0.75)
    assert expectation(rho, np.diag([1, -1])).real == pytest.approx(-0.5)
    with pytest.raises(InvalidStateError):
        mixture([0.5, 0.6], [rho, rho])


def test_json_is_sorted_indented_and_newline_terminated():
    data = dumps({"b": 1, "a": 2j})
    assert data.endswith(b"\n")
    assert data.startswith(b'{\n  "a"')
    assert loads(data) == {"a": [0.0, 2.0], "b": 1}


def test_state_json_round_trip():
    psi = bloch_state(0.9, 1.3)
    back = state_from_json(loads(dumps(state_to_json(psi))))
    assert_allclose(back.amplitudes, psi.amplitudes)


def test_dense_dimension_cap():
    with pytest.raises(CapExceededError):
        MemoryManager.check_dense_dim(64, "test operator", cap=32)
    assert MemoryManager.check_dense_dim(16, "test operator", cap=32)
