"""Two spins with Zeeman terms and an Ising coupling 2 J S1z S2z (hbar = 1, S = sigma/2).

Spin 1 is the high tensor factor; level E_{x1 x2} is indexed by the basis label x1 x2.
"""
import logging
from dataclasses import dataclass
from typing import Dict

import numpy as np
from scipy.linalg import expm

from config import ATOL_ALGEBRA
from core.errors import DomainError
from gates.library import IDENTITY, SIGMA_Z, standard_gate

S_Z = SIGMA_Z / 2
S1Z = np.kron(S_Z, IDENTITY)
S2Z = np.kron(IDENTITY, S_Z)


@dataclass(frozen=True)
class IsingPair:
    omega1: float
    omega2: float
    J: float

    def __post_init__(self):
        if not all(np.isfinite([self.omega1, self.omega2, self.J])):
            raise DomainError("Ising parameters must be finite")

    @property
    def in_selective_regime(self) -> bool:
        return self.omega1 < self.omega2 < -self.J < 0

    def hamiltonian(self) -> np.ndarray:
        return self.omega1 * S1Z + self.omega2 * S2Z + 2 * self.J * S1Z @ S2Z


def ising_levels(p: IsingPair) -> Dict[str, float]:
    """E_{x1x2} = ((-1)^x1 omega1 + (-1)^x2 omega2 + (-1)^(x1+x2) J) / 2."""
    levels = {}
    for x1 in (0, 1):
        for x2 in (0, 1):
            levels[f"{x1}{x2}"] = 0.5 * ((-1) ** x1 * p.omega1 + (-1) ** x2 * p.omega2 + (-1) ** (x1 + x2) * p.J)
    return levels


def ising_transition_frequencies(p: IsingPair) -> Dict[str, float]:
    """Single-spin-flip transitions, keyed by the two levels they connect."""
    e = ising_levels(p)
    pairs = [("00", "01"), ("10", "11"), ("00", "10"), ("01", "11")]
    return {f"{a}<->{b}": abs(e[a] - e[b]) for a, b in pairs}


def ising_cnot_check(p: IsingPair, atol: float = 1e-9) -> bool:
    """True if the 11<->10 line sits at |omega2| + J and no other transition shares it."""
    freqs = ising_transition_frequencies(p)
    target = freqs.pop("10<->11")
    if abs(target - (abs(p.omega2) + p.J)) > atol:
        logging.debug(f"11<->10 line at {target}, expected {abs(p.omega2) + p.J}")
        return False
    return all(abs(target - other) > atol for other in freqs.values())


def ising_cphase(phi: float) -> np.ndarray:
    """exp(-i phi/2 [-1/2 + S1z + S2z - 2 S1z S2z]) = diag(1, 1, 1, e^{i phi})."""
    generator = -0.5 * np.eye(4) + S1Z + S2Z - 2 * S1Z @ S2Z
    return expm(-0.5j * phi * generator)


def ising_cnot() -> np.ndarray:
    """CNOT = (1 x H) CPh(pi) (1 x H)."""
    h = np.kron(IDENTITY, standard_gate("H").matrix)
    u = h @ ising_cphase(np.pi) @ h
    if not np.allclose(u, standard_gate("CNOT").matrix, atol=ATOL_ALGEBRA):
        raise DomainError("Hadamard-conjugated phase gate is not CNOT")
    return u
