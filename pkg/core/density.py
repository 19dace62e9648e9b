"""Density matrices, partial traces and fidelities.

Factor dimensions are listed left to right as in the tensor product: the first factor is
the most significant one. For a qubit register, factor j is site n-1-j.
"""
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from config import ATOL_ALGEBRA, ATOL_PSD
from core.errors import DimensionError, InvalidStateError
from core.state import StateVector


@dataclass(frozen=True)
class DensityMatrix:
    entries: np.ndarray

    def __post_init__(self):
        rho = np.array(self.entries, dtype=complex, copy=True)
        if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
            raise DimensionError(f"density matrix must be square, got shape {rho.shape}")
        if not np.allclose(rho, rho.conj().T, atol=ATOL_ALGEBRA):
            raise InvalidStateError("density matrix is not Hermitian")
        if abs(np.trace(rho) - 1.0) > ATOL_ALGEBRA:
            raise InvalidStateError(f"density matrix trace {np.trace(rho).real} != 1")
        if np.linalg.eigvalsh(rho).min() < -ATOL_PSD:
            raise InvalidStateError("density matrix has a negative eigenvalue")
        rho.setflags(write=False)
        object.__setattr__(self, "entries", rho)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def eigenvalues(self) -> np.ndarray:
        """Eigenvalues in descending order, with round-off negatives clipped to zero."""
        vals = np.linalg.eigvalsh(self.entries)
        return np.clip(vals, 0.0, None)[::-1]


def density_from_state(psi: Union[StateVector, np.ndarray]) -> DensityMatrix:
    vec = psi.amplitudes if isinstance(psi, StateVector) else np.asarray(psi, dtype=complex)
    return DensityMatrix(np.outer(vec, vec.conj()))


def mixture(weights: Sequence[float], members: Sequence[DensityMatrix]) -> DensityMatrix:
    if abs(sum(weights) - 1.0) > ATOL_ALGEBRA or min(weights) < 0:
        raise InvalidStateError("mixture weights must form a probability distribution")
    return DensityMatrix(sum(w * m.entries for w, m in zip(weights, members)))


def random_density(dim: int, rng, rank: int = None) -> DensityMatrix:
    """Induced-measure random state: partial trace of a random pure state on dim x rank."""
    rank = dim if rank is None else rank
    g = rng.generator.normal(size=(dim, rank)) + 1j * rng.generator.normal(size=(dim, rank))
    rho = g @ g.conj().T
    return DensityMatrix(rho / np.trace(rho).real)


def _check_dims(dim: int, dims: Sequence[int]):
    if int(np.prod(dims)) != dim:
        raise DimensionError(f"factor dimensions {tuple(dims)} do not multiply to {dim}")


def partial_trace(rho: Union[DensityMatrix, np.ndarray], dims: Sequence[int], keep: Sequence[int]) -> DensityMatrix:
    """Trace out every factor not listed in keep; kept factors stay in their original order."""
    mat = rho.entries if isinstance(rho, DensityMatrix) else np.asarray(rho, dtype=complex)
    dims = list(dims)
    _check_dims(mat.shape[0], dims)
    keep = sorted(set(keep))
    if any(not 0 <= k < len(dims) for k in keep):
        raise DimensionError(f"subsystem selector {keep} out of range for {len(dims)} factors")
    n = len(dims)
    t = mat.reshape(dims + dims)
    traced = [i for i in range(n) if i not in keep]
    # Contract the traced factors pairwise, highest index first so axis numbers stay valid.
    for count, i in enumerate(sorted(traced, reverse=True)):
        remaining = n - count
        t = np.trace(t, axis1=i, axis2=i + remaining)
    kept_dim = int(np.prod([dims[k] for k in keep])) if keep else 1
    return DensityMatrix(t.reshape(kept_dim, kept_dim))


def fidelity_to_pure(rho: Union[DensityMatrix, np.ndarray], psi: StateVector) -> float:
    mat = rho.entries if isinstance(rho, DensityMatrix) else np.asarray(rho, dtype=complex)
    if mat.shape[0] != psi.dim:
        raise DimensionError(f"density dimension {mat.shape[0]} does not match state dimension {psi.dim}")
    value = np.vdot(psi.amplitudes, mat @ psi.amplitudes).real
    return float(np.clip(value, 0.0, 1.0))


def expectation(rho: Union[DensityMatrix, np.ndarray], op: np.ndarray) -> complex:
    mat = rho.entries if isinstance(rho, DensityMatrix) else np.asarray(rho, dtype=complex)
    return complex(np.trace(mat @ op))
