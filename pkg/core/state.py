"""State vectors over n qudits.

Amplitude index x = sum_i x_i d^i, so site 0 is the least significant digit. Multi-site
operators list their targets most-significant tensor factor first: a CNOT acting with
targets (1, 0) has site 1 as control.
"""
import logging
from dataclasses import dataclass
from typing import Sequence, Tuple, Union

import numpy as np
from scipy.stats import unitary_group

from config import ATOL_ALGEBRA, runtime_config
from core.errors import DimensionError, NotUnitaryError, InvalidStateError
from utils.memory_manager import MemoryManager


def _frozen(array, dtype=complex) -> np.ndarray:
    out = np.array(array, dtype=dtype, copy=True)
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class StateVector:
    local_dim: int
    num_sites: int
    amplitudes: np.ndarray

    def __post_init__(self):
        if self.local_dim < 2 or self.num_sites < 1:
            raise DimensionError(f"invalid register d={self.local_dim}, n={self.num_sites}")
        amps = _frozen(self.amplitudes).reshape(-1)
        if amps.shape[0] != self.local_dim ** self.num_sites:
            raise DimensionError(f"expected {self.local_dim ** self.num_sites} amplitudes, got {amps.shape[0]}")
        if not np.all(np.isfinite(amps)):
            raise InvalidStateError("amplitudes must be finite")
        norm = float(np.vdot(amps, amps).real)
        if abs(norm - 1.0) > ATOL_ALGEBRA:
            raise InvalidStateError(f"state not normalized: norm^2 = {norm}")
        object.__setattr__(self, "amplitudes", amps)

    @property
    def dim(self) -> int:
        return self.amplitudes.shape[0]

    @classmethod
    def from_amplitudes(cls, amplitudes, local_dim: int = 2, normalize: bool = False):
        amps = np.asarray(amplitudes, dtype=complex).reshape(-1)
        n = int(round(np.log(amps.shape[0]) / np.log(local_dim)))
        if local_dim ** n != amps.shape[0]:
            raise DimensionError(f"length {amps.shape[0]} is not a power of {local_dim}")
        if normalize:
            amps = amps / np.linalg.norm(amps)
        return cls(local_dim, n, amps)

    def amplitude(self, index: Union[int, str]) -> complex:
        if isinstance(index, str):
            index = int(index, self.local_dim)
        return complex(self.amplitudes[index])

    def digits(self, index: int) -> Tuple[int, ...]:
        """Site values (x_0, ..., x_{n-1}) of a basis index."""
        return tuple((index // self.local_dim ** s) % self.local_dim for s in range(self.num_sites))

    def label(self, index: int) -> str:
        return "".join(str(v) for v in reversed(self.digits(index)))


def basis_state(index: Union[int, str, Sequence[int]], num_sites: int, local_dim: int = 2) -> StateVector:
    """Computational basis state; a string is read most-significant digit first, a sequence as (x_0, x_1, ...)."""
    if isinstance(index, str):
        index = int(index, local_dim)
    elif not isinstance(index, (int, np.integer)):
        index = sum(int(v) * local_dim ** s for s, v in enumerate(index))
    dim = local_dim ** num_sites
    if not 0 <= index < dim:
        raise DimensionError(f"basis index {index} out of range for dimension {dim}")
    amps = np.zeros(dim, dtype=complex)
    amps[index] = 1.0
    return StateVector(local_dim, num_sites, amps)


def bloch_state(theta: float, phi: float) -> StateVector:
    return StateVector(2, 1, [np.cos(theta / 2), np.exp(1j * phi) * np.sin(theta / 2)])


def bloch_angles(psi: StateVector) -> Tuple[float, float]:
    """Inverse of bloch_state, after removing the phase of the |0> amplitude."""
    if psi.dim != 2:
        raise DimensionError("Bloch angles are defined for a single qubit")
    c0, c1 = psi.amplitudes
    theta = 2 * np.arctan2(abs(c1), abs(c0))
    phi = float(np.angle(c1) - np.angle(c0)) if abs(c1) > ATOL_ALGEBRA and abs(c0) > ATOL_ALGEBRA else 0.0
    return float(theta), float(np.mod(phi, 2 * np.pi))


def random_state(num_sites: int, rng, local_dim: int = 2) -> StateVector:
    dim = local_dim ** num_sites
    vec = rng.generator.normal(size=dim) + 1j * rng.generator.normal(size=dim)
    return StateVector(local_dim, num_sites, vec / np.linalg.norm(vec))


def random_unitary(dim: int, rng) -> np.ndarray:
    return unitary_group.rvs(dim, random_state=rng.generator)


def tensor(a: StateVector, b: StateVector) -> StateVector:
    """a occupies the high-significance sites of the result."""
    if a.local_dim != b.local_dim:
        raise DimensionError(f"local dimensions differ: {a.local_dim} vs {b.local_dim}")
    amps = np.kron(a.amplitudes, b.amplitudes)
    return StateVector(a.local_dim, a.num_sites + b.num_sites, amps)


def is_unitary(u: np.ndarray, atol: float = ATOL_ALGEBRA) -> bool:
    u = np.asarray(u)
    return u.ndim == 2 and u.shape[0] == u.shape[1] and np.allclose(u.conj().T @ u, np.eye(u.shape[0]), atol=atol)


def check_targets(targets: Sequence[int], num_sites: int):
    if len(set(targets)) != len(targets):
        raise DimensionError(f"repeated target in {tuple(targets)}")
    for t in targets:
        if not 0 <= t < num_sites:
            raise DimensionError(f"target {t} out of range for {num_sites} sites")


def apply_matrix(amplitudes: np.ndarray, u: np.ndarray, targets: Sequence[int], num_sites: int, local_dim: int) -> np.ndarray:
    """Contract a k-site operator into an amplitude array without any unitarity check."""
    k = len(targets)
    psi = np.asarray(amplitudes).reshape((local_dim,) * num_sites)
    axes = [num_sites - 1 - t for t in targets]
    op = np.asarray(u).reshape((local_dim,) * (2 * k))
    out = np.tensordot(op, psi, axes=(list(range(k, 2 * k)), axes))
    out = np.moveaxis(out, list(range(k)), axes)
    return out.reshape(-1)


def apply_unitary(state: StateVector, u: np.ndarray, targets: Sequence[int], check: bool = True) -> StateVector:
    u = np.asarray(u, dtype=complex)
    targets = list(targets)
    check_targets(targets, state.num_sites)
    if u.shape != (state.local_dim ** len(targets),) * 2:
        raise DimensionError(f"operator of shape {u.shape} does not fit {len(targets)} target sites")
    if check and not is_unitary(u):
        raise NotUnitaryError("operator is not unitary within tolerance")
    amps = apply_matrix(state.amplitudes, u, targets, state.num_sites, state.local_dim)
    return StateVector(state.local_dim, state.num_sites, amps)


def apply_operator_dense(state: StateVector, u: np.ndarray) -> StateVector:
    """Full-register operator application, used by the oracle-style constructions."""
    MemoryManager.check_dense_dim(state.dim, "dense register operator", runtime_config.max_dense_dim)
    u = np.asarray(u, dtype=complex)
    if u.shape != (state.dim, state.dim):
        raise DimensionError(f"operator of shape {u.shape} does not act on dimension {state.dim}")
    amps = u @ state.amplitudes
    logging.debug(f"dense operator applied on dimension {state.dim}")
    return StateVector(state.local_dim, state.num_sites, amps)


def overlap(a: StateVector, b: StateVector) -> complex:
    if a.dim != b.dim:
        raise DimensionError("states live in different spaces")
    return complex(np.vdot(a.amplitudes, b.amplitudes))


def equal_up_to_phase(a: StateVector, b: StateVector, atol: float = ATOL_ALGEBRA) -> bool:
    return abs(abs(overlap(a, b)) - 1.0) < atol
