import itertools

import numpy as np
import pytest

from codes import (apply_pauli_string, as_word, bound_curves, bound_table, bsc_capacity, code_space_fidelity, correct,
                   coset_leader_table, decode, dual_code, encode, h2, hamming_734, hamming_code,
                   hamming_error_position, hq, is_subcode, message_of, min_distance, mutual_information, pauli_string,
                   quantum_bounds, repetition_code, shannon_entropy, steane_code, steane_correct, steane_encode,
                   steane_syndrome, syndrome, typical_count, weight_enumerator, word_str)
from core import CapExceededError, DomainError, bloch_angles, make_rng


# information measures

def test_entropy_and_capacity():
    assert shannon_entropy([0.25] * 4) == pytest.approx(2.0)
    assert h2(0.11) == pytest.approx(0.4999, abs=1e-3)
    assert bsc_capacity(0.5) == pytest.approx(0.0)
    assert hq(2 / 3, 3) == pytest.approx(1.0)
    assert mutual_information(np.array([[0.5, 0], [0, 0.5]])) == pytest.approx(1.0)
    assert mutual_information(np.full((2, 2), 0.25)) == pytest.approx(0.0)
    with pytest.raises(DomainError):
        shannon_entropy([0.5, 0.6])


def test_bound_curves_at_the_ends():
    start = bound_curves(0.0)
    assert start["plotkin"] == start["hamming"] == start["bassalygo_elias"] == pytest.approx(1.0)
    assert bound_curves(0.5)["plotkin"] == pytest.approx(0.0)
    assert start["tvz"] is None
    with pytest.raises(DomainError):
        bound_curves(0.6)


@pytest.mark.parametrize("q", [2, 4, 49])
def test_lower_bounds_stay_below_upper_bounds(q):
    for row in bound_table(q, 41):
        upper = min(row["plotkin"], row["hamming"], row["elias"])
        assert row["gv"] <= upper + 1e-12
        if row["tvz"] is not None:
            assert row["tvz"] <= upper + 1e-12


def test_tvz_beats_gilbert_varshamov_somewhere_for_q_49():
    assert any(row["tvz"] > row["gv"] for row in bound_table(49, 201))


def test_quantum_bounds():
    assert quantum_bounds(0, 10) == {"hamming_q": pytest.approx(1.0), "gv_q": pytest.approx(1.0)}
    bounds = quantum_bounds(1, 10)
    assert bounds["hamming_q"] == pytest.approx(1 - h2(0.1) - 0.1 * np.log2(3))
    assert bounds["gv_q"] <= bounds["hamming_q"]
    assert quantum_bounds(6, 10)["gv_q"] is None
    with pytest.raises(DomainError):
        quantum_bounds(8, 10)


def test_typical_count():
    assert typical_count(0.5, 10, 0.5).count == 2 ** 10
    typical = typical_count(0.11, 20, 0.1)
    assert typical.count == 6195
    assert typical.rate > h2(0.11)
    masses = [typical_count(0.11, n, 0.1).mass for n in (12, 16, 20)]
    assert masses == sorted(masses)
    with pytest.raises(CapExceededError):
        typical_count(0.5, 30, 0.1)


# linear codes

def test_hamming_code_parameters():
    code = hamming_734()
    assert (code.n, code.k, min_distance(code)) == (7, 4, 3)
    assert not np.any(code.G.astype(int) @ code.H.T.astype(int) % 2)
    assert weight_enumerator(code) == {0: 1, 3: 7, 4: 7, 7: 1}
    assert hamming_code(4).n == 15


def test_hamming_example_word():
    code = hamming_734()
    assert syndrome(code, "0110001") == "110"
    assert word_str(correct(code, "0110001")) == "0110011"
    assert hamming_error_position("0110001") == 6
    assert decode(code, "0110001") == word_str(message_of(code, "0110011"))


def test_hamming_corrects_every_single_error():
    code = hamming_734()
    table = coset_leader_table(code)
    assert len(table) == 8
    for message in itertools.product([0, 1], repeat=4):
        word = encode(code, np.array(message))
        for position in range(7):
            received = word.copy()
            received[position] ^= 1
            assert hamming_error_position(word_str(received)) == position + 1
            np.testing.assert_array_equal(decode(code, received, table), message)


def test_encode_lands_in_the_kernel():
    code = hamming_734()
    for message in ("0000", "1011", "1111"):
        assert code.contains(encode(code, message))


def test_repetition_and_dual_codes():
    rep = repetition_code(5)
    assert min_distance(rep) == 5
    assert decode(rep, "11010") == "1"
    simplex = dual_code(hamming_734())
    assert set(weight_enumerator(simplex)) == {0, 4}
    assert is_subcode(simplex, hamming_734())
    with pytest.raises(DomainError):
        repetition_code(3, q=3)


def test_code_validation():
    from codes import LinearCode
    with pytest.raises(DomainError):
        LinearCode(np.array([[1, 1, 0], [1, 1, 0]]))
    with pytest.raises(DomainError):
        as_word("012")
    with pytest.raises(DomainError):
        message_of(hamming_734(), "1000000")


# Steane code

def test_steane_code_structure():
    code = steane_code()
    assert (code.n, code.k) == (7, 1)
    assert len(code.basis) == 2
    assert all(len(coset) == 8 for coset in code.cosets)
    assert "0000000" in code.cosets[0]


def test_pauli_strings():
    assert pauli_string(7, 3, "X") == "IIXIIII"
    with pytest.raises(DomainError):
        pauli_string(7, 1, "Q")


def test_bit_flip_syndrome_names_the_position(rng):
    state = apply_pauli_string(steane_encode(1.0, 0.0), pauli_string(7, 3, "X"))
    outcome, position, _ = steane_syndrome(state, "bit", rng)
    assert outcome == "110"
    assert position == 3


@pytest.mark.parametrize("position", range(1, 8))
@pytest.mark.parametrize("kind", ["X", "Y", "Z"])
def test_steane_corrects_every_single_qubit_error(position, kind, rng):
    encoded = steane_encode(np.cos(0.4), np.exp(0.9j) * np.sin(0.4))
    result = steane_correct(encoded, pauli_string(7, position, kind), rng)
    assert code_space_fidelity(result.state, encoded) == pytest.approx(1.0, abs=1e-10)
    assert result.flipped == (position if kind in "XY" else None)
    assert result.dephased == (position if kind in "YZ" else None)
    assert result.diagnostic == ""


def test_steane_random_logical_states():
    rng = make_rng(99)
    for _ in range(50):
        theta, phi = rng.random() * np.pi, rng.random() * 2 * np.pi
        encoded = steane_encode(np.cos(theta / 2), np.exp(1j * phi) * np.sin(theta / 2))
        for position, kind in itertools.product(range(1, 8), "XYZ"):
            result = steane_correct(encoded, pauli_string(7, position, kind), rng)
            assert code_space_fidelity(result.state, encoded) == pytest.approx(1.0, abs=1e-10)


def test_weight_two_error_is_flagged(rng):
    result = steane_correct(steane_encode(1.0, 0.0), "XXIIIII", rng)
    assert "weight-2" in result.diagnostic
