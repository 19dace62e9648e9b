"""Linear ion trap with V (carrier) and U (sideband) laser pulses.

Each ion has levels |0>, |1> and an auxiliary |2>; all ions share one vibrational mode truncated to
{|g>, |e>}. Tensor factors are ordered ion 0, ..., ion n-1, phonon, with ion 0 most significant.
"""
import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence

import numpy as np
from scipy.linalg import expm

from config import ATOL_ALGEBRA, runtime_config
from core.errors import DimensionError, DomainError, InvalidStateError
from utils.memory_manager import MemoryManager

ION_LEVELS = 3
PHONON_LEVELS = 2
PHONON_LABELS = {"g": 0, "e": 1}
PULSE_KINDS = ("V", "U1", "U2")


@dataclass(frozen=True)
class IonPulse:
    kind: str
    angle: float
    phase: float
    ion: int
    eta: Optional[float] = None
    omega_z: Optional[float] = None  # trap axial frequency, bookkeeping only

    def __post_init__(self):
        if self.kind not in PULSE_KINDS:
            raise DomainError(f"pulse kind must be one of {PULSE_KINDS}, got {self.kind!r}")
        if not np.isfinite(self.angle) or not np.isfinite(self.phase):
            raise DomainError("pulse angle and phase must be finite")
        if self.ion < 0:
            raise DimensionError(f"ion index must be >= 0, got {self.ion}")

    @property
    def aux_level(self) -> Optional[int]:
        return int(self.kind[1]) if self.kind.startswith("U") else None

    def to_dict(self):
        return {"kind": self.kind, "angle": self.angle, "phase": self.phase, "ion": self.ion, "eta": self.eta}


def v_pulse(theta: float, phi: float) -> np.ndarray:
    """3x3: |0> -> cos(theta/2)|0> - i e^{-i phi} sin(theta/2)|1>, |1> -> cos|1> - i e^{i phi} sin|0>, |2> fixed."""
    h = np.zeros((ION_LEVELS, ION_LEVELS), dtype=complex)
    h[1, 0] = np.exp(-1j * phi)
    h[0, 1] = np.exp(1j * phi)
    return expm(-0.5j * theta * h)


def u_pulse(kappa: float, phi: float, aux: int = 1) -> np.ndarray:
    """6x6 on (ion level, phonon): couples |0>|e> with |aux>|g>; |0>|g> is untouched."""
    if aux not in (1, 2):
        raise DomainError(f"auxiliary level must be 1 or 2, got {aux}")
    lower = np.zeros((PHONON_LEVELS, PHONON_LEVELS), dtype=complex)
    lower[0, 1] = 1.0  # a|e> = |g>
    jump = np.zeros((ION_LEVELS, ION_LEVELS), dtype=complex)
    jump[aux, 0] = 1.0
    h = np.exp(-1j * phi) * np.kron(jump, lower)
    return expm(-0.5j * kappa * (h + h.conj().T))


def _register_dims(n_ions: int) -> tuple:
    if n_ions < 1:
        raise DimensionError("need at least one ion")
    return (ION_LEVELS,) * n_ions + (PHONON_LEVELS,)


def _embed(local: np.ndarray, ion: int, n_ions: int) -> np.ndarray:
    """Lift a (level, phonon) operator on one ion to the whole trap."""
    dims = _register_dims(n_ions)
    if not 0 <= ion < n_ions:
        raise DimensionError(f"ion {ion} outside 0..{n_ions - 1}")
    dim = int(np.prod(dims))
    MemoryManager.check_dense_dim(dim, "ion-trap register", runtime_config.max_dense_dim)
    op = local.reshape(ION_LEVELS, PHONON_LEVELS, ION_LEVELS, PHONON_LEVELS)
    eye = np.eye(dim, dtype=complex).reshape(dims + dims)
    out = np.tensordot(op, eye, axes=([2, 3], [ion, n_ions]))
    out = np.moveaxis(out, [0, 1], [ion, n_ions])
    return out.reshape(dim, dim)


def ion_pulse_unitary(p: IonPulse, n_ions: int) -> np.ndarray:
    if p.kind == "V":
        local = np.kron(v_pulse(p.angle, p.phase), np.eye(PHONON_LEVELS))
    else:
        local = u_pulse(p.angle, p.phase, p.aux_level)
    return _embed(local, p.ion, n_ions)


def pulse_sequence_unitary(pulses: Sequence[IonPulse], n_ions: int) -> np.ndarray:
    """Pulses in time order; the first pulse acts first."""
    dim = ION_LEVELS ** n_ions * PHONON_LEVELS
    u = np.eye(dim, dtype=complex)
    for p in pulses:
        u = ion_pulse_unitary(p, n_ions) @ u
    return u


def ion_basis_index(levels: str, phonon: str = "g") -> int:
    if phonon not in PHONON_LABELS:
        raise DomainError(f"phonon occupancy must be 'g' or 'e', got {phonon!r}")
    if any(ch not in "012" for ch in levels):
        raise DomainError(f"ion levels must be 0, 1 or 2, got {levels!r}")
    return int(levels, ION_LEVELS) * PHONON_LEVELS + PHONON_LABELS[phonon]


def ion_basis_state(levels: str, phonon: str = "g") -> np.ndarray:
    psi = np.zeros(ION_LEVELS ** len(levels) * PHONON_LEVELS, dtype=complex)
    psi[ion_basis_index(levels, phonon)] = 1.0
    return psi


def _computational_indices(n_ions: int) -> List[int]:
    return [ion_basis_index(format(b, f"0{n_ions}b")) for b in range(2 ** n_ions)]


def computational_block(u: np.ndarray, n_ions: int) -> np.ndarray:
    """Restriction to ion levels {0, 1} with the phonon in |g>, rows and columns by bit string."""
    idx = _computational_indices(n_ions)
    return u[np.ix_(idx, idx)]


def leakage(u: np.ndarray, n_ions: int) -> float:
    """Largest population left outside the computational block, over computational inputs."""
    idx = _computational_indices(n_ions)
    kept = (np.abs(u[np.ix_(idx, idx)]) ** 2).sum(axis=0)
    return float(max(0.0, (1.0 - kept).max()))


def _checked(u: np.ndarray, n_ions: int, label: str) -> np.ndarray:
    lost = leakage(u, n_ions)
    if lost > ATOL_ALGEBRA:
        raise InvalidStateError(f"{label}: {lost:.3e} population left in auxiliary or phonon levels")
    return u


def cz_cphase_pulses(i: int, j: int) -> List[IonPulse]:
    return [IonPulse("U1", np.pi, 0.0, i), IonPulse("U2", 2 * np.pi, 0.0, j), IonPulse("U1", np.pi, 0.0, i)]


def cz_cphase(i: int, j: int, n_ions: int = 2) -> np.ndarray:
    """U1_i(pi, 0) U2_j(2 pi, 0) U1_i(pi, 0): a conditional sign on |1>_i |1>_j."""
    if i == j:
        raise DimensionError("controlled phase needs two distinct ions")
    u = pulse_sequence_unitary(cz_cphase_pulses(i, j), n_ions)
    return _checked(u, n_ions, "controlled phase")


def cz_cnot_pulses(i: int, j: int) -> List[IonPulse]:
    """Target rotated by V(pi/2, -pi/2) = Ry(pi/2) and back by V(pi/2, pi/2), then V_i(pi, 0), V_i(pi, pi/2).

    The last two pulses on the control make the result -i CNOT.
    """
    return ([IonPulse("V", np.pi / 2, -np.pi / 2, j)] + cz_cphase_pulses(i, j)
            + [IonPulse("V", np.pi / 2, np.pi / 2, j), IonPulse("V", np.pi, 0.0, i), IonPulse("V", np.pi, np.pi / 2, i)])


def cz_cnot(i: int, j: int, n_ions: int = 2) -> np.ndarray:
    if i == j:
        raise DimensionError("CNOT needs two distinct ions")
    u = pulse_sequence_unitary(cz_cnot_pulses(i, j), n_ions)
    logging.debug(f"Cirac-Zoller CNOT control={i} target={j} on {n_ions} ions")
    return _checked(u, n_ions, "CNOT")


def phase_frame(block: np.ndarray, reference: np.ndarray) -> Optional[complex]:
    """The global phase c with block = c reference, or None when they differ by more than a phase."""
    k = int(np.argmax(np.abs(reference)))
    flat_ref, flat_block = reference.reshape(-1), block.reshape(-1)
    c = flat_block[k] / flat_ref[k]
    if abs(abs(c) - 1.0) > ATOL_ALGEBRA or not np.allclose(block, c * reference, atol=ATOL_ALGEBRA):
        return None
    return complex(c)
