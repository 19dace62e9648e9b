import numpy as np
import pytest

from core import DomainError, basis_state, bloch_state, equal_up_to_phase
from protocols import (Transcript, bb84_session, bbm92_session, dense_coding, dense_decode, dense_encoded_state,
                       digits_to_text, eve_detection_probability, rsa_break, rsa_decrypt, rsa_encrypt, rsa_keygen,
                       rsa_private_from_euler, run_sessions, split_blocks, teleport, text_to_digits,
                       text_to_number_string, vernam_decrypt, vernam_encrypt, vernam_key_reuse_leak)
from tests.conftest import binomial_bounds


# teleportation and dense coding

@pytest.mark.parametrize("branch", ["00", "01", "10", "11"])
def test_every_teleportation_branch_recovers_the_state(branch):
    psi = bloch_state(1.0, 0.5)
    bob, transcript = teleport(psi, branch=branch)
    assert equal_up_to_phase(bob, psi)
    assert transcript.classical_bits_sent("Alice") == 2
    assert transcript.classical_bits_sent("Bob") == 0


def test_sampled_teleportation(rng):
    psi = bloch_state(2.1, -0.7)
    for _ in range(10):
        bob, transcript = teleport(psi, rng)
        assert equal_up_to_phase(bob, psi)
        assert transcript.count("receive measurement") == 1


def test_teleportation_rejects_bad_input():
    with pytest.raises(DomainError):
        teleport(basis_state(0, 2))
    with pytest.raises(DomainError):
        teleport(basis_state(0, 1), branch="2")


@pytest.mark.parametrize("message", ["00", "01", "10", "11"])
def test_dense_coding_round_trip(message):
    decoded, transcript = dense_coding(message)
    assert decoded == message
    assert transcript.classical_bits_sent() == 0
    assert dense_decode(dense_encoded_state(message)) == message


def test_transcript_only_delivers_sent_messages():
    transcript = Transcript().send("Alice", "Bob", "key", "101")
    assert transcript.receive("Bob", "key") == "101"
    with pytest.raises(DomainError):
        transcript.receive("Eve", "key")
    with pytest.raises(DomainError):
        transcript.send("Alice", "Bob", "key", "12")
    with pytest.raises(DomainError):
        transcript.act("Mallory", "listen")
    assert transcript.to_lines()[0].startswith("0000 Alice send key -> Bob")


# key distribution

def test_bb84_without_eavesdropper(rng):
    session = bb84_session(4000, rng=rng)
    low, high = binomial_bounds(4000, 0.5)
    assert low <= session.sifted_length <= high
    assert session.qber == 0.0
    assert session.sifted_key_alice == session.sifted_key_bob


def test_bb84_intercept_resend_error_rate(rng):
    session = bb84_session(40_000, eve=True, rng=rng)
    assert session.qber == pytest.approx(0.25, abs=0.01)
    assert session.detection_probability(72) > 0.999


def test_bb84_loss_shrinks_the_sifted_key(rng):
    session = bb84_session(8000, rng=rng, loss=0.5)
    low, high = binomial_bounds(8000, 0.25)
    assert low <= session.sifted_length <= high
    assert session.qber == 0.0
    with pytest.raises(DomainError):
        bb84_session(10, loss=1.0)


def test_bb84_is_reproducible_per_seed():
    assert bb84_session(200, rng=7).sifted_key_alice == bb84_session(200, rng=7).sifted_key_alice


def test_eve_detection_probability():
    assert eve_detection_probability(1) == pytest.approx(0.25)
    assert eve_detection_probability(72) == pytest.approx(1 - 0.75 ** 72)
    with pytest.raises(DomainError):
        eve_detection_probability(-1)


def test_bbm92_keys_agree(rng):
    session = bbm92_session(4000, rng)
    low, high = binomial_bounds(4000, 0.5)
    assert low <= session.sifted_length <= high
    assert session.qber == 0.0
    assert session.protocol == "bbm92"


def test_parallel_sessions_are_independent_and_reproducible():
    first = run_sessions(300, 3, rng=11, n_jobs=1)
    second = run_sessions(300, 3, rng=11, n_jobs=1)
    assert [s.sifted_key_alice for s in first] == [s.sifted_key_alice for s in second]
    assert len({s.sifted_key_alice for s in first}) == 3


# classical cryptography

def test_text_encoding():
    assert text_to_digits("a z") == [1, 0, 26]
    assert digits_to_text([8, 9]) == "hi"
    assert text_to_number_string("qc") == "1703"
    with pytest.raises(DomainError):
        text_to_digits("qc!")


def test_vernam_cipher_and_key_reuse():
    cipher = vernam_encrypt("1010", "0110")
    assert cipher == "1100"
    assert vernam_decrypt(cipher, "0110") == "1010"
    other = vernam_encrypt("0011", "0110")
    assert vernam_key_reuse_leak(cipher, other) == vernam_encrypt("1010", "0011")
    assert vernam_decrypt(vernam_encrypt([3, 25], [7, 9], 27), [7, 9], 27) == [3, 25]
    with pytest.raises(DomainError):
        vernam_encrypt("101", "1")


def test_rsa_round_trip():
    key = rsa_keygen(11, 13, 7)
    assert key.public == (143, 103)
    assert rsa_private_from_euler(103, 120) == 7
    blocks = split_blocks(text_to_number_string("qc"), key.N)
    assert blocks == [17, 3]
    assert [rsa_decrypt(rsa_encrypt(b, key), key) for b in blocks] == blocks
    with pytest.raises(DomainError):
        rsa_keygen(11, 11, 7)
    with pytest.raises(DomainError):
        rsa_encrypt(143, key)


def test_rsa_break_recovers_private_exponent(rng):
    broken = rsa_break(143, 103, rng=rng)
    assert sorted(broken.factors) == [11, 13]
    assert broken.d == 7
