"""Quantum key distribution: the four-state scheme and its entanglement-based variant.

Polarizations are qubit states H=|0>, V=|1>, D=(H+V)/sqrt2, A=(H-V)/sqrt2. Basis 0 is
rectilinear {H, V}, basis 1 diagonal {D, A}; bit 0 is H or D.
"""
import logging
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from joblib import Parallel, delayed

from config import runtime_config
from core.errors import DomainError
from core.rng import make_rng
from protocols.transcript import Transcript
from qinfo.entanglement import bell

# _POLARIZATION[basis, bit] is the photon state
_POLARIZATION = np.array([
    [[1, 0], [0, 1]],
    [[1, 1], [1, -1]],
], dtype=complex)
_POLARIZATION[1] /= np.sqrt(2)
BASIS_SYMBOLS = "+x"
DEFAULT_CHECK_BITS = 72


def _bits_str(bits: np.ndarray) -> str:
    return "".join("1" if b else "0" for b in bits)


def _measure(states: np.ndarray, bases: np.ndarray, rng) -> np.ndarray:
    """Born sampling of each photon state (rows) in its measurement basis."""
    p0 = np.abs(np.einsum("ij,ij->i", _POLARIZATION[bases, 0].conj(), states)) ** 2
    return (rng.generator.random(len(states)) >= p0).astype(np.int8)


def eve_detection_probability(n_check: int) -> float:
    """Chance that n_check compared bits expose an intercept-resend attacker."""
    if n_check < 0:
        raise DomainError("check sample size must be non-negative")
    return 1.0 - 0.75 ** n_check


@dataclass
class QKDSession:
    n_photons: int
    alice_bits: np.ndarray
    alice_bases: np.ndarray
    bob_bases: np.ndarray
    bob_outcomes: np.ndarray  # -1 marks a photon Bob failed to detect
    sifted_key_alice: str
    sifted_key_bob: str
    eve_enabled: bool = False
    transcript: Transcript = field(default_factory=Transcript, repr=False)
    protocol: str = "bb84"

    def __post_init__(self):
        if len(self.sifted_key_alice) != len(self.sifted_key_bob):
            raise DomainError("sifted keys must have equal length")

    @property
    def sifted_length(self) -> int:
        return len(self.sifted_key_alice)

    @property
    def qber(self) -> float:
        if not self.sifted_length:
            return 0.0
        errors = sum(a != b for a, b in zip(self.sifted_key_alice, self.sifted_key_bob))
        return errors / self.sifted_length

    def detection_probability(self, n_check: int = DEFAULT_CHECK_BITS) -> float:
        """Probability that comparing n_check sifted bits shows at least one disagreement."""
        return 1.0 - (1.0 - self.qber) ** n_check

    def to_dict(self, n_check: int = DEFAULT_CHECK_BITS):
        return {"protocol": self.protocol, "n": self.n_photons, "eve": self.eve_enabled,
                "sifted_len": self.sifted_length, "qber": self.qber,
                "detection_prob": self.detection_probability(n_check)}


def _sift(transcript: Transcript, alice_bits: np.ndarray, alice_bases: np.ndarray, bob_bases: np.ndarray,
          bob_outcomes: np.ndarray, flip_bob: bool = False):
    """Public basis reconciliation: Bob announces his bases and detections, Alice answers with a keep mask."""
    detected = bob_outcomes >= 0
    transcript.send("Bob", "Alice", "detections", _bits_str(detected))
    transcript.send("Bob", "Alice", "bases", _bits_str(bob_bases))
    announced = np.array([int(b) for b in transcript.receive("Alice", "bases")], dtype=np.int8)
    seen = np.array([b == "1" for b in transcript.receive("Alice", "detections")])
    keep = seen & (announced == alice_bases)
    transcript.send("Alice", "Bob", "keep", _bits_str(keep))
    mask = np.array([b == "1" for b in transcript.receive("Bob", "keep")], dtype=bool)
    key_bob = bob_outcomes[mask]
    if flip_bob:
        key_bob = 1 - key_bob
    return _bits_str(alice_bits[keep]), _bits_str(key_bob)


def bb84_session(n: int, eve: bool = False, rng=None, loss: float = 0.0) -> QKDSession:
    if n < 1:
        raise DomainError(f"need at least one photon, got {n}")
    if not 0.0 <= loss < 1.0:
        raise DomainError(f"loss probability must lie in [0, 1), got {loss}")
    rng = make_rng(rng)
    transcript = Transcript()
    alice_bits = rng.bits(n)
    alice_bases = rng.bits(n)
    photons = _POLARIZATION[alice_bases, alice_bits]
    transcript.act("Alice", f"send {n} photons")

    if eve:
        eve_bases = rng.bits(n)
        eve_bits = _measure(photons, eve_bases, rng)
        photons = _POLARIZATION[eve_bases, eve_bits]
        transcript.act("Eve", "intercept and resend", outcomes=f"{int(eve_bits.sum())} ones")

    bob_bases = rng.bits(n)
    bob_outcomes = _measure(photons, bob_bases, rng).astype(np.int8)
    if loss > 0:
        lost = rng.generator.random(n) < loss
        bob_outcomes[lost] = -1
    transcript.act("Bob", "measure")

    key_a, key_b = _sift(transcript, alice_bits, alice_bases, bob_bases, bob_outcomes)
    session = QKDSession(n, alice_bits, alice_bases, bob_bases, bob_outcomes, key_a, key_b, eve, transcript)
    logging.info(f"BB84 n={n} eve={eve}: sifted {session.sifted_length}, QBER {session.qber:.4f}")
    return session


def _singlet_table() -> np.ndarray:
    """table[a, b, k]: probability of joint outcome k = 2*i + j when Alice measures basis a and Bob basis b."""
    singlet = bell("psi-").amplitudes
    table = np.zeros((2, 2, 4))
    for a in range(2):
        for b in range(2):
            for i in range(2):
                for j in range(2):
                    vec = np.kron(_POLARIZATION[a, i], _POLARIZATION[b, j])
                    table[a, b, 2 * i + j] = abs(np.vdot(vec, singlet)) ** 2
    return table


def bbm92_session(n: int, rng=None) -> QKDSession:
    """Singlet pairs measured in random bases; Bob reverses his outcomes after sifting."""
    if n < 1:
        raise DomainError(f"need at least one pair, got {n}")
    rng = make_rng(rng)
    transcript = Transcript()
    transcript.act("Alice", f"share {n} singlets").act("Bob", f"share {n} singlets")
    alice_bases = rng.bits(n)
    bob_bases = rng.bits(n)
    probs = _singlet_table()[alice_bases, bob_bases]
    cumulative = np.cumsum(probs, axis=1)
    draws = rng.generator.random(n)[:, None]
    joint = np.minimum((draws >= cumulative).sum(axis=1), 3)
    alice_bits = (joint >> 1).astype(np.int8)
    bob_outcomes = (joint & 1).astype(np.int8)
    transcript.act("Alice", "measure").act("Bob", "measure")

    key_a, key_b = _sift(transcript, alice_bits, alice_bases, bob_bases, bob_outcomes, flip_bob=True)
    session = QKDSession(n, alice_bits, alice_bases, bob_bases, bob_outcomes, key_a, key_b, False, transcript,
                         protocol="bbm92")
    logging.info(f"BBM92 n={n}: sifted {session.sifted_length}, QBER {session.qber:.4f}")
    return session


def basis_string(bases: np.ndarray) -> str:
    return "".join(BASIS_SYMBOLS[b] for b in bases)


def run_sessions(n: int, sessions: int, eve: bool = False, rng=None, n_jobs: Optional[int] = None):
    """Independent BB84 sessions on derived seeds."""
    children = make_rng(rng).split(sessions)
    return Parallel(n_jobs=n_jobs or runtime_config.n_jobs)(delayed(bb84_session)(n, eve, child) for child in children)
