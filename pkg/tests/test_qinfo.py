from fractions import Fraction

import numpy as np
import pytest
from sympy import Rational

from core import DomainError, InvalidStateError, basis_state, bloch_state, density_from_state, random_density, tensor
from qinfo import (Ensemble, bbpssw_map, bbpssw_round, bbpssw_success, bell, bell_weights, concavity_gap,
                   distillation_trajectory, entanglement_entropy, entropy_inequalities, ghz, holevo_chi, is_entangled,
                   is_separable, locc_convertible, majorizes, mutual_information_quantum, peres_is_ppt,
                   rounds_to_reach, schmidt, simulate_round, von_neumann_entropy, werner, werner_twirl)

PRODUCT = tensor(bloch_state(0.3, 0.1), bloch_state(1.2, 2.0))


def test_schmidt_form_of_bell_and_product_states():
    form = schmidt(bell("psi-"), 2, 2)
    assert form.rank == 2
    np.testing.assert_allclose(form.weights, [0.5, 0.5])
    np.testing.assert_allclose(form.reconstruct(), bell("psi-").amplitudes, atol=1e-12)
    assert not is_entangled(PRODUCT, 2, 2)
    assert entanglement_entropy(bell("phi+"), 2, 2) == pytest.approx(1.0)


def test_entropies():
    assert von_neumann_entropy(np.eye(4) / 4) == pytest.approx(2.0)
    assert von_neumann_entropy(density_from_state(PRODUCT)) == pytest.approx(0.0, abs=1e-9)
    assert mutual_information_quantum(density_from_state(bell("phi+")), [2, 2]) == pytest.approx(2.0)
    with pytest.raises(InvalidStateError):
        von_neumann_entropy(np.diag([1.2, -0.2]))


def test_entropy_inequalities_hold_for_random_states(rng):
    for i in range(200):
        dims = [[2, 2], [2, 4], [4, 2]][i % 3]
        dim = dims[0] * dims[1]
        report = entropy_inequalities(random_density(dim, rng), dims, other=random_density(dim, rng),
                                      p=float(rng.random()))
        assert report.subadditive
        assert report.triangle
        assert report.concave
        assert report.concavity_gap >= -1e-8


def test_concavity_gap_of_mixed_orthogonal_states():
    ensemble = Ensemble.of_states([(0.5, basis_state(0, 1)), (0.5, basis_state(1, 1))])
    assert concavity_gap(ensemble) == pytest.approx(1.0)
    report = entropy_inequalities(density_from_state(bell("phi+")), [2, 2])
    assert report.concavity_gap is None
    assert report.concave is None


def test_pure_bipartite_state_has_equal_reduced_entropies():
    report = entropy_inequalities(density_from_state(bell("phi+")), [2, 2])
    assert report.s_a == pytest.approx(report.s_b)
    assert report.s_ab == pytest.approx(0.0, abs=1e-9)


def test_holevo_chi_of_non_orthogonal_pair():
    plus = bloch_state(np.pi / 2, 0.0)
    ensemble = Ensemble.of_states([(0.5, basis_state(0, 1)), (0.5, plus)])
    p = np.cos(np.pi / 8) ** 2
    expected = -(p * np.log2(p) + (1 - p) * np.log2(1 - p))
    assert holevo_chi(ensemble) == pytest.approx(expected)
    orthogonal = Ensemble.of_states([(0.5, basis_state(0, 1)), (0.5, basis_state(1, 1))])
    assert holevo_chi(orthogonal) == pytest.approx(1.0)


def test_majorization():
    assert majorizes([0.5, 0.5], [1.0, 0.0])
    assert not majorizes([1.0, 0.0], [0.5, 0.5])
    assert majorizes([0.4, 0.3, 0.3], [0.6, 0.4])
    assert not majorizes([0.5, 0.5], [0.9, 0.2])


def test_locc_conversion_only_loses_entanglement():
    assert locc_convertible(bell("phi+"), PRODUCT, [2, 2])
    assert not locc_convertible(PRODUCT, bell("phi+"), [2, 2])


@pytest.mark.parametrize("F, separable", [(0.25, True), (0.5, True), (0.51, False), (0.9, False)])
def test_werner_separability(F, separable):
    assert is_separable(werner(F).rho, [2, 2]) is separable


def test_separability_verdict_is_limited_to_small_systems():
    with pytest.raises(DomainError):
        is_separable(np.eye(9) / 9, [3, 3])
    assert peres_is_ppt(np.eye(9) / 9, [3, 3])


def test_ghz_is_entangled_across_any_cut():
    assert is_entangled(ghz(3), 2, 4)
    assert is_entangled(ghz(3), 4, 2)


def test_werner_construction():
    state = werner(0.7)
    weights = bell_weights(state.rho)
    assert weights["psi-"] == pytest.approx(0.7)
    assert weights["phi+"] == pytest.approx(0.1)
    assert werner_twirl(density_from_state(bell("psi-"))).F == pytest.approx(1.0)
    with pytest.raises(DomainError):
        werner(1.5)


def test_distillation_map_is_exact_for_rationals():
    assert bbpssw_map(Fraction(3, 4)) == Rational(41, 52)
    assert bbpssw_map(0.75) == pytest.approx(41 / 52)
    assert bbpssw_map(1) == 1
    assert bbpssw_success(0.75) > 0.25


def test_distillation_map_is_monotone_on_a_fine_grid():
    grid = np.linspace(0.501, 1.0, 500)
    mapped = np.array([bbpssw_map(F) for F in grid])
    assert np.all(np.diff(mapped) >= 0)
    assert np.all(mapped >= grid - 1e-12)
    assert mapped[-1] == pytest.approx(1.0)


def test_distillation_needs_fidelity_above_half():
    with pytest.raises(DomainError):
        bbpssw_map(0.5)
    with pytest.raises(DomainError):
        bbpssw_round(0.8, mode="bogus")


def test_density_matrix_round_matches_closed_form(rng):
    for F in (0.6, 0.75, 0.95):
        result = simulate_round(F, rng)
        assert result.f_out == pytest.approx(float(bbpssw_map(F)), abs=1e-10)
        assert result.success_probability == pytest.approx(bbpssw_success(F), abs=1e-10)
        assert result.kept in (True, False)


def test_iterated_map_approaches_one():
    assert rounds_to_reach(0.6, 0.99) > 0
    F = 0.6
    for _ in range(rounds_to_reach(0.6, 0.99)):
        F = float(bbpssw_map(F))
    assert F > 0.99


def test_trajectory_tracks_the_pair_supply(rng):
    rows = distillation_trajectory(0.75, 5, 1024)
    assert rows[0] == {"round": 0, "F": 0.75, "success_rate": 1.0, "pairs_remaining": 1024}
    assert rows[1]["F"] == pytest.approx(41 / 52)
    assert rows[1]["pairs_remaining"] == int(np.floor(512 * bbpssw_success(0.75)))
    assert all(a["F"] < b["F"] for a, b in zip(rows, rows[1:]))
    sampled = distillation_trajectory(0.75, 3, 64, rng=rng)
    assert all(0 <= r["pairs_remaining"] <= 64 for r in sampled)


def test_trajectory_stops_when_pairs_run_out():
    rows = distillation_trajectory(0.75, 10, 4)
    assert len(rows) < 11
    assert rows[-1]["pairs_remaining"] < 2
