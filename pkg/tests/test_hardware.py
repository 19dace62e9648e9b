import numpy as np
import pytest
from numpy.testing import assert_allclose

from core import DimensionError, DomainError, InvalidStateError
from gates import rx, ry, rz, standard_gate
from hardware import (BELL_PULSES, CNOT_PULSES, GRADIENT, IonPulse, IsingPair, KaneParams, ProductOperatorState,
                      RabiField, computational_block, cz_cnot, cz_cphase, interaction_picture_propagator, ion_basis_index,
                      ising_cnot, ising_cnot_check, ising_cphase, ising_levels, ising_transition_frequencies,
                      kane_cnot_schedule_check, kane_crossover_field, kane_exact_omega_J, kane_exchange,
                      kane_omega_J, kane_sector_levels, kane_splitting, leakage, max_flip_prob, nmr_bell_sequence,
                      nmr_cnot_sequence, nmr_prepare_pseudo_pure, nmr_pulse, nmr_signal, phase_frame, pi_pulse_time,
                      pulse_program_unitary, rabi_propagator, rabi_rotation_pulses, rabi_trace, reference_deviation,
                      rot, sequence_unitary, spin_flip_prob, superoperator_distance, symmetric_levels)

CNOT = standard_gate("CNOT").matrix


def cnot_reference(control: int, target: int, n: int) -> np.ndarray:
    """CNOT on n bits, ion 0 as the most significant bit."""
    u = np.zeros((2 ** n, 2 ** n))
    for b in range(2 ** n):
        flip = (b >> (n - 1 - control)) & 1
        u[b ^ (flip << (n - 1 - target)), b] = 1.0
    return u


# Rabi

def test_resonant_pi_pulse_flips_the_spin():
    field = RabiField.resonant(10.0, 1.0)
    assert spin_flip_prob(field, pi_pulse_time(field)) == pytest.approx(1.0)
    assert_allclose(rabi_propagator(field, 0.0), np.eye(2), atol=1e-12)


def test_flip_probability_follows_the_rabi_formula():
    field = RabiField(10.0, 1.0, 9.0)
    assert max_flip_prob(field) == pytest.approx(0.5)
    for t in np.linspace(0, 10, 7):
        expected = 0.5 * np.sin(field.Omega * t / 2) ** 2
        assert spin_flip_prob(field, t) == pytest.approx(expected, abs=1e-12)
    assert max(row["flip_probability"] for row in rabi_trace(field, np.linspace(0, 20, 401))) <= 0.5 + 1e-12


def test_interaction_picture_at_resonance_is_an_x_rotation():
    field = RabiField.resonant(7.0, 0.8)
    assert_allclose(interaction_picture_propagator(field, 1.3), rx(0.8 * 1.3), atol=1e-12)


def test_propagator_is_unitary_and_rejects_negative_time():
    u = rabi_propagator(RabiField(3.0, 0.4, 2.5), 2.0)
    assert_allclose(u.conj().T @ u, np.eye(2), atol=1e-12)
    with pytest.raises(DomainError):
        rabi_propagator(RabiField(3.0, 0.4, 2.5), -1.0)


@pytest.mark.parametrize("angles", [(0.3, 1.1, -0.4), (2.0, 0.5, 1.0), (-1.2, 2.9, 0.0)])
def test_rotation_recipe_realizes_euler_angles(angles):
    alpha, beta, gamma = angles
    field = RabiField.resonant(10.0, 1.0)
    u = pulse_program_unitary(rabi_rotation_pulses(alpha, beta, gamma, field), field)
    assert_allclose(u, rz(alpha) @ ry(beta) @ rz(gamma), atol=1e-9)


def test_rotation_recipe_needs_resonance():
    with pytest.raises(DomainError):
        rabi_rotation_pulses(0.1, 0.2, 0.3, RabiField(10.0, 1.0, 9.0))


# Ising pair

def test_ising_levels_closed_form():
    pair = IsingPair(-11.0, -6.0, 2.0)
    e = ising_levels(pair)
    assert_allclose(sorted(e.values()), sorted(np.diag(pair.hamiltonian()).real))
    assert e["00"] + e["11"] == pytest.approx(e["01"] + e["10"] + 2 * pair.J)


def test_cnot_line_is_resolved_in_the_selective_regime():
    pair = IsingPair(-11.0, -6.0, 2.0)
    assert pair.in_selective_regime
    assert ising_cnot_check(pair)
    assert ising_transition_frequencies(pair)["10<->11"] == pytest.approx(8.0)
    assert len(set(np.round(list(ising_transition_frequencies(pair).values()), 9))) == 4


def test_without_coupling_the_cnot_line_is_degenerate():
    pair = IsingPair(-11.0, -6.0, 0.0)
    assert not ising_cnot_check(pair)
    assert set(np.round(list(ising_transition_frequencies(pair).values()), 9)) == {6.0, 11.0}


def test_ising_controlled_phase_and_cnot():
    assert_allclose(ising_cphase(0.7), np.diag([1, 1, 1, np.exp(0.7j)]), atol=1e-12)
    assert_allclose(ising_cnot(), CNOT, atol=1e-12)


# ion trap

def test_cirac_zoller_controlled_phase():
    block = computational_block(cz_cphase(0, 1), 2)
    assert_allclose(block, np.diag([1, 1, 1, -1]), atol=1e-10)
    assert leakage(cz_cphase(0, 1), 2) < 1e-10


@pytest.mark.parametrize("control, target, ions", [(0, 1, 2), (1, 0, 2), (0, 2, 3), (2, 1, 3), (3, 0, 4)])
def test_cirac_zoller_cnot_up_to_phase(control, target, ions):
    u = cz_cnot(control, target, ions)
    assert leakage(u, ions) < 1e-10
    c = phase_frame(computational_block(u, ions), cnot_reference(control, target, ions))
    assert c is not None
    assert c == pytest.approx(-1j)


def test_ion_pulse_validation():
    with pytest.raises(DomainError):
        IonPulse("W", 1.0, 0.0, 0)
    with pytest.raises(DimensionError):
        cz_cnot(1, 1)
    with pytest.raises(DomainError):
        ion_basis_index("013")


def test_phase_frame_rejects_different_operators():
    assert phase_frame(np.eye(4), CNOT) is None


# NMR

def test_pseudo_pure_preparation_trace():
    trace = nmr_prepare_pseudo_pure()
    assert len(trace) == 7
    final = trace[-1][1]
    assert final.isclose(ProductOperatorState(2, {"ZI": 0.5, "IZ": 0.5, "ZZ": 0.5}))


def test_bell_sequence():
    out = nmr_bell_sequence()
    assert out.isclose(ProductOperatorState(2, {"II": 0.25, "ZZ": 0.5, "XX": 0.5, "YY": -0.5}))


def test_cnot_sequence_matches_the_gate():
    u = nmr_cnot_sequence()
    assert_allclose(u, np.exp(-0.25j * np.pi) * CNOT, atol=1e-10)
    assert superoperator_distance(CNOT_PULSES, CNOT) < 1e-10
    assert superoperator_distance(BELL_PULSES, CNOT) > 1e-3


def test_gradient_drops_transverse_terms():
    state = ProductOperatorState(2, {"ZI": 1.0, "XI": 0.5, "XZ": 0.3, "ZZ": 0.2})
    assert nmr_pulse(GRADIENT, state).coefficients == {"ZI": 1.0, "ZZ": 0.2}
    with pytest.raises(DomainError):
        sequence_unitary([GRADIENT])


def test_product_operator_expansion():
    state = reference_deviation()
    back = ProductOperatorState.from_matrix(state.to_matrix())
    assert back.isclose(state)
    assert_allclose(np.diag(state.to_matrix()).real, [1.25, 0.25, 0.25, -0.25])
    with pytest.raises(DomainError):
        ProductOperatorState(2, {"XQ": 1.0})
    with pytest.raises(InvalidStateError):
        ProductOperatorState.from_matrix(np.array([[0, 1], [0, 0]]))


def test_observable_signal():
    assert nmr_signal(reference_deviation()) == pytest.approx(0.0)
    assert nmr_signal(ProductOperatorState(2, {"XI": 1.0})) == pytest.approx(1.0)
    tipped = nmr_pulse(rot(np.pi / 2, 1, "y"), ProductOperatorState(2, {"ZI": 1.0}))
    assert abs(nmr_signal(tipped)) == pytest.approx(1.0)


# Kane

def test_exchange_splitting_for_phosphorus():
    params = KaneParams.phosphorus(B=2.0, J=30e9)
    assert kane_omega_J(params) == pytest.approx(75e3, rel=0.1)
    assert kane_exact_omega_J(params) == pytest.approx(75e3, rel=0.1)


def test_perturbative_splitting_tracks_exact_levels():
    g = KaneParams.phosphorus().electron_zeeman
    params = KaneParams(A=0.02 * g, J=0.3 * g, B=2.0)
    assert kane_omega_J(params) == pytest.approx(kane_exact_omega_J(params), rel=0.05)


def test_perturbative_formulas_refuse_strong_coupling():
    params = KaneParams.phosphorus()
    with pytest.raises(DomainError):
        kane_omega_J(params.with_J(2 * params.electron_zeeman))
    with pytest.raises(DomainError):
        kane_splitting(KaneParams(A=0.5 * params.electron_zeeman, J=0.0, B=2.0))


def test_sector_levels_match_closed_forms():
    params = KaneParams.phosphorus()
    exact = kane_sector_levels(params)
    closed = np.sort(list(symmetric_levels(params).values()))
    assert_allclose(exact, closed, rtol=0, atol=1e-9 * params.electron_zeeman)


def test_nuclear_splitting_and_crossover():
    params = KaneParams.phosphorus()
    first_order = params.gamma_n_bar * params.B + params.A / 2
    assert kane_splitting(params) == pytest.approx(first_order, rel=0.01)
    assert kane_crossover_field(params) == pytest.approx(params.A / (2 * params.gamma_n_bar))


def test_exchange_decays_with_distance():
    near, far = kane_exchange(100e-10), kane_exchange(200e-10)
    assert near > far > 0
    with pytest.raises(DomainError):
        kane_exchange(0.0)


def test_coupling_ramp_is_continuous():
    check = kane_cnot_schedule_check(KaneParams.phosphorus(), steps=50)
    assert check.continuous
    assert len(check.rows) == 50
