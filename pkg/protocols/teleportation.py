"""Teleportation and dense coding over a shared Phi+ pair.

Three-qubit registers list Alice's qubits first: the message qubit on site 2, her half of
the pair on site 1, Bob's half on site 0.
"""
import logging
from typing import Optional, Tuple

import numpy as np

from core.errors import DomainError
from core.measurement import measure, probabilities, project
from core.rng import make_rng
from core.state import StateVector, apply_unitary, tensor
from gates.circuit import Circuit, run
from gates.library import standard_gate
from protocols.transcript import Transcript
from qinfo.entanglement import bell

# Bob's correction keyed on Alice's two bits
CORRECTIONS = {"00": "I", "01": "X", "10": "Z", "11": "Y"}
DENSE_CODEBOOK = {"00": "I", "01": "Z", "10": "X", "11": "Y"}


def teleport(psi: StateVector, rng=None, branch: Optional[str] = None) -> Tuple[StateVector, Transcript]:
    """Move psi from Alice to Bob using one ebit and two classical bits.

    branch forces Alice's measurement result, so every branch can be checked deterministically.
    """
    if psi.num_sites != 1 or psi.local_dim != 2:
        raise DomainError("teleportation moves a single qubit")
    transcript = Transcript()
    transcript.act("Alice", "share ebit").act("Bob", "share ebit")

    state = run(Circuit(3).add("CNOT", 2, 1).add("H", 2), tensor(psi, bell("phi+")))
    transcript.act("Alice", "apply CNOT then H")

    if branch is None:
        record = measure(state, [2, 1], make_rng(rng))
        outcome, state = record.outcome, record.post_state
    else:
        if branch not in CORRECTIONS:
            raise DomainError(f"branch must be one of {sorted(CORRECTIONS)}, got {branch!r}")
        outcome, state = branch, project(state, [2, 1], branch)
    transcript.act("Alice", "measure", outcomes=outcome)
    transcript.send("Alice", "Bob", "measurement", outcome)

    bits = transcript.receive("Bob", "measurement")
    m1, m2 = int(bits[0]), int(bits[1])
    bob = state.amplitudes.reshape(2, 2, 2)[m1, m2, :]
    bob = StateVector(2, 1, bob / np.linalg.norm(bob))
    bob = apply_unitary(bob, standard_gate(CORRECTIONS[bits]).matrix, [0])
    transcript.act("Bob", f"apply {CORRECTIONS[bits]}")
    logging.debug(f"teleportation branch {bits}")
    return bob, transcript


def dense_encode(message: str) -> str:
    """Gate Alice applies to her half of Phi+ to send two bits."""
    if message not in DENSE_CODEBOOK:
        raise DomainError(f"dense coding sends two bits, got {message!r}")
    return DENSE_CODEBOOK[message]


def dense_encoded_state(message: str) -> StateVector:
    return apply_unitary(bell("phi+"), standard_gate(dense_encode(message)).matrix, [1])


def dense_decode(state: StateVector) -> str:
    """Bob's CNOT then H on the first qubit; the second qubit gives the first message bit."""
    state = run(Circuit(2).add("CNOT", 1, 0).add("H", 1), state)
    probs = probabilities(state, [0, 1])
    index = int(np.argmax(probs))
    if probs[index] < 1 - 1e-9:
        raise DomainError("state is not one of the four dense-coding states")
    return format(index, "02b")


def dense_coding(message: str) -> Tuple[str, Transcript]:
    transcript = Transcript()
    transcript.act("Alice", "share ebit").act("Bob", "share ebit")
    state = dense_encoded_state(message)
    transcript.act("Alice", f"apply {dense_encode(message)}")
    transcript.act("Alice", "send qubit")
    decoded = dense_decode(state)
    transcript.act("Bob", "Bell measurement", outcomes=decoded)
    return decoded, transcript
