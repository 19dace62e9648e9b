from fractions import Fraction

import numpy as np
import pytest

from algorithms import (FailureCause, GroverParams, ShorContext, Verdict, balanced_bit_oracle, best_convergent,
                        constant_oracle, continued_fraction, deutsch_jozsa, deutsch_jozsa_classical, factor,
                        factor_with, gf2_nullspace, gf2_rank, good_q_mass, grover_amplitude, grover_exact_m,
                        grover_optimal_m, grover_peak, grover_reduced_success, grover_search, grover_success_curve,
                        marked_oracle, mod_exp, multiplicative_order, nearest_int, order_from_measurement,
                        parity_oracle, period_oracle, prime_power_factor, shor_histogram, shor_order, shor_prob_q,
                        shor_prob_q_conditional, shor_register_size, simon, span)
from core import DimensionError, DomainError


# number theory

def test_mod_exp_and_order():
    assert mod_exp(7, 4, 15) == 1
    assert mod_exp(3, 0, 1) == 0
    assert multiplicative_order(7, 15) == 4
    assert multiplicative_order(12083, 21823) == 3588
    with pytest.raises(DomainError):
        multiplicative_order(3, 15)


def test_continued_fraction_terms():
    assert continued_fraction(3, 8) == [0, 2, 1, 2]
    with pytest.raises(DomainError):
        continued_fraction(8, 8)


def test_prime_power_detection():
    assert prime_power_factor(243) == (3, 5)
    assert prime_power_factor(15) is None
    assert factor(243).method == "prime_power"


def test_register_size():
    assert shor_register_size(15) == 8
    assert shor_register_size(21823) == 29
    with pytest.raises(DomainError):
        shor_register_size(2)


# order finding and factoring

def test_prob_q_is_a_distribution():
    assert shor_prob_q(np.arange(64), 6, 64).sum() == pytest.approx(1.0)
    assert good_q_mass(4, 256) == pytest.approx(1.0)
    assert good_q_mass(6, 64) > 0.4


def test_order_from_measurement_promotes_to_the_true_order():
    assert order_from_measurement(64, 256, 7, 15) == 4
    assert order_from_measurement(128, 256, 7, 15) == 4
    assert order_from_measurement(0, 256, 7, 15) is None


def test_context_validation():
    with pytest.raises(DomainError):
        ShorContext(16, 3)
    with pytest.raises(DomainError):
        ShorContext(15, 5)


def test_factor_fifteen_on_the_state_vector(rng):
    result = factor(15, rng, backend="statevector", a=7)
    assert result.r == 4
    assert list(result.factors) == [3, 5]
    assert result.failure is None


def test_histogram_for_fifteen_has_four_equal_peaks(rng):
    counts = shor_histogram(ShorContext(15, 7), 10_000, rng)
    assert set(counts) == {0, 64, 128, 192}
    for q in (0, 64, 128, 192):
        assert counts[q] / 10_000 == pytest.approx(0.25, abs=0.03)


def test_conditional_distribution_is_normalised():
    q = np.arange(64)
    total = np.zeros(64)
    for d in range(6):
        conditional = shor_prob_q_conditional(q, 6, 64, d)
        assert conditional.sum() == pytest.approx(1.0)
        total += conditional * len(range(d, 64, 6)) / 64
    np.testing.assert_allclose(total, shor_prob_q(q, 6, 64), atol=1e-12)
    assert isinstance(shor_prob_q_conditional(0, 6, 64, 0), float)


def test_convergent_for_the_twenty_five_thousand_example():
    assert best_convergent(6170930, 2 ** 30, 25397) == Fraction(1, 174)
    assert order_from_measurement(6170930, 2 ** 30, 71, 25397) == 522


def test_probability_near_a_peak_matches_one_over_r():
    p = shor_prob_q(6170930, 522, 2 ** 30)
    assert 2e-3 / 1.5 < p < 2e-3 * 1.5


def test_prob_q_beyond_machine_integers():
    Q, r = 2 ** 80, 41668083336
    peak = (2 * Q + r) // (2 * r)
    p = shor_prob_q(peak, r, Q)
    assert 4 / np.pi ** 2 / r <= p <= 1.0001 / r
    assert shor_prob_q(peak + 2 ** 70, r, Q) < p


def test_analytic_order_for_a_forty_bit_modulus(rng):
    N = 1000003 * 1000033
    result = shor_order(ShorContext(N, 2), backend="analytic", rng=rng)
    assert result.Q == 2 ** 80
    assert pow(2, result.r, N) == 1
    assert result.r == multiplicative_order(2, N)


def test_statevector_cap_is_enforced(rng):
    from core import CapExceededError
    with pytest.raises(CapExceededError):
        shor_order(ShorContext(21823, 12083), backend="statevector", rng=rng)


@pytest.mark.parametrize("N, a, r, factors", [(21823, 12083, 3588, (139, 157)), (25397, 71, 522, (109, 233))])
def test_analytic_factoring(N, a, r, factors, rng):
    result = factor_with(N, a, backend="analytic", rng=rng)
    assert result.r == r
    assert result.factors == factors
    assert result.succeeded


def test_minus_one_failure_is_reported(rng):
    result = factor_with(21823, 14335, backend="analytic", rng=rng)
    assert result.failure == FailureCause.MINUS_ONE.value
    assert not result.succeeded


def test_factor_with_random_bases(rng):
    result = factor(21, rng)
    assert sorted(result.factors) == [3, 7]


def test_factor_rejects_even_input():
    with pytest.raises(DomainError):
        factor(22)


# Grover

def test_nearest_int_rounds_halves_up():
    assert nearest_int(2.5) == 3
    assert nearest_int(-0.5) == 0
    assert nearest_int(1.49) == 1


def test_two_qubit_search_succeeds_in_one_iteration(rng):
    for x0 in range(4):
        result = grover_search(2, x0, m=1, rng=rng)
        assert result.success_probability == pytest.approx(1.0)
        assert result.outcome == x0
        assert result.queries == 1


def test_large_search_space():
    assert grover_reduced_success(1024, GroverParams.standard(), 25) > 0.99
    assert grover_optimal_m(1024) == 25
    assert grover_exact_m(4) == 1


def test_simulated_search_matches_reduced_kernel(rng):
    params = GroverParams.from_phases(0.7, 0.7)
    result = grover_search(5, 11, params=params, m=3, rng=rng)
    assert result.success_probability == pytest.approx(result.predicted_probability, abs=1e-10)


def test_phase_matched_search_peaks_near_optimum():
    params = GroverParams.from_phases(np.pi / 2, np.pi / 2)
    m, p = grover_peak(1000, params, 100)
    assert abs(m - 35) <= 1
    assert grover_optimal_m(1000, np.pi / 2) == 35
    assert p > 0.9


def test_spectral_amplitude_matches_iteration():
    for params in (GroverParams.standard(), GroverParams.from_phases(0.4, 0.4)):
        curve = grover_success_curve(16, params, 8)
        for m in range(9):
            assert abs(grover_amplitude(16, params, m)) ** 2 == pytest.approx(curve[m], abs=1e-10)


def test_success_curve_starts_at_uniform():
    curve = grover_success_curve(8, GroverParams.standard(), 4)
    assert len(curve) == 5
    assert curve[0] == pytest.approx(1 / 8)


def test_mismatched_phases_never_reach_one_half():
    params = GroverParams(1.0, np.exp(1j * np.pi / 2))
    curve = grover_success_curve(1024, params, 200)
    assert curve.max() < 0.5
    assert grover_peak(1024, params, 200)[1] < 0.5


def test_grover_parameter_validation():
    with pytest.raises(DomainError):
        GroverParams(2.0, 1.0)
    with pytest.raises(DomainError):
        grover_optimal_m(16, np.pi)
    with pytest.raises(DomainError):
        grover_search(2, 4)


# Simon and Deutsch-Jozsa

def test_gf2_helpers():
    assert gf2_rank([0b011, 0b110, 0b101], 3) == 2
    assert span(gf2_nullspace([0b11], 2)) == [0, 3]


@pytest.mark.parametrize("n, period", [(3, 5), (4, 9), (2, 1)])
def test_simon_recovers_period(n, period, rng):
    f = period_oracle(n, period)
    result = simon(f, rng)
    assert result.period == period
    assert result.queries == len(result.samples)
    assert all(bin(s & period).count("1") % 2 == 0 for s in result.samples)


def test_period_oracle_validation():
    with pytest.raises(DimensionError):
        period_oracle(3, 0)


@pytest.mark.parametrize("oracle, verdict", [
    (constant_oracle(3, 0), Verdict.CONSTANT),
    (constant_oracle(3, 1), Verdict.CONSTANT),
    (balanced_bit_oracle(3, 1), Verdict.BALANCED),
    (parity_oracle(3, 0b101), Verdict.BALANCED),
])
def test_deutsch_jozsa_is_exact(oracle, verdict, rng):
    result = deutsch_jozsa(oracle, rng)
    assert result.verdict is verdict
    assert result.prob_all_zero == pytest.approx(1.0 if verdict is Verdict.CONSTANT else 0.0, abs=1e-12)
    assert result.queries == 1


def test_classical_deutsch_jozsa(rng):
    constant = deutsch_jozsa_classical(constant_oracle(4, 1), 5, rng)
    assert constant.verdict is Verdict.CONSTANT
    assert constant.error_bound == pytest.approx(2 ** -5)
    assert constant.evaluations == 6


def test_oracle_unitary_is_a_permutation():
    u = marked_oracle(2, 3).unitary()
    np.testing.assert_allclose(u @ u, np.eye(8))
