"""Bipartite entanglement: Schmidt form, entropies, majorization and the Peres test.

Bipartitions follow the tensor-product order: subsystem A is the first (most significant)
factor, so a state on n sites splits as A = high sites, B = low sites.
"""
import logging
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from config import ATOL_ALGEBRA, ATOL_PSD
from core.density import DensityMatrix, density_from_state, partial_trace
from core.errors import DimensionError, DomainError, InvalidStateError
from core.state import StateVector

MAJORIZATION_TOL = 1e-12
SEPARABILITY_DIMS = {(2, 2), (2, 3), (3, 2)}

Matrixish = Union[DensityMatrix, np.ndarray]


def _matrix(rho: Matrixish) -> np.ndarray:
    return rho.entries if isinstance(rho, DensityMatrix) else np.asarray(rho, dtype=complex)


def _vector(psi: Union[StateVector, np.ndarray]) -> np.ndarray:
    return psi.amplitudes if isinstance(psi, StateVector) else np.asarray(psi, dtype=complex).reshape(-1)


@dataclass(frozen=True)
class SchmidtForm:
    weights: np.ndarray
    left_basis: List[np.ndarray]
    right_basis: List[np.ndarray]
    rank: int

    def reconstruct(self) -> np.ndarray:
        out = sum(np.sqrt(w) * np.kron(u, v) for w, u, v in zip(self.weights, self.left_basis, self.right_basis))
        return np.asarray(out, dtype=complex)

    def to_dict(self):
        return {"rank": self.rank, "weights": [float(w) for w in self.weights]}


def schmidt(psi: Union[StateVector, np.ndarray], dA: int, dB: int) -> SchmidtForm:
    """Schmidt decomposition through the singular values of the dA x dB coefficient matrix."""
    vec = _vector(psi)
    if dA * dB != vec.shape[0]:
        raise DimensionError(f"bipartition {dA}x{dB} does not match state dimension {vec.shape[0]}")
    u, s, vh = np.linalg.svd(vec.reshape(dA, dB))
    weights = s ** 2
    keep = weights > ATOL_ALGEBRA
    weights = weights[keep] / weights[keep].sum()
    rank = int(keep.sum())
    left = [u[:, k] for k in range(rank)]
    right = [vh[k, :] for k in range(rank)]
    return SchmidtForm(weights, left, right, rank)


def is_entangled(psi: Union[StateVector, np.ndarray], dA: int, dB: int) -> bool:
    return schmidt(psi, dA, dB).rank > 1


def shannon_bits(p: Sequence[float]) -> float:
    p = np.asarray(p, dtype=float)
    p = p[p > 0]
    return float(-(p * np.log2(p)).sum()) if p.size else 0.0


def von_neumann_entropy(rho: Matrixish) -> float:
    """S(rho) = -tr(rho log2 rho) in bits, with eigenvalues in [-1e-8, 0) treated as zero."""
    vals = np.linalg.eigvalsh(_matrix(rho))
    if vals.min() < -ATOL_PSD:
        raise InvalidStateError(f"negative eigenvalue {vals.min():.3e} in entropy argument")
    return max(shannon_bits(np.clip(vals, 0.0, None)), 0.0)


def entanglement_entropy(psi: Union[StateVector, np.ndarray], dA: int, dB: int) -> float:
    """Entropy of either reduced state, read off the Schmidt weights."""
    return shannon_bits(schmidt(psi, dA, dB).weights)


def reduced_states(rho: Matrixish, dims: Sequence[int]) -> Tuple[DensityMatrix, DensityMatrix]:
    dims = list(dims)
    if len(dims) != 2:
        raise DimensionError(f"expected a bipartition, got dims {dims}")
    return partial_trace(rho, dims, [0]), partial_trace(rho, dims, [1])


def mutual_information_quantum(rho: Matrixish, dims: Sequence[int]) -> float:
    """S(A) + S(B) - S(AB)."""
    rho_a, rho_b = reduced_states(rho, dims)
    return von_neumann_entropy(rho_a) + von_neumann_entropy(rho_b) - von_neumann_entropy(rho)


@dataclass(frozen=True)
class EntropyReport:
    s_a: float
    s_b: float
    s_ab: float
    concavity_gap: Optional[float] = None

    @property
    def subadditive(self) -> bool:
        return self.s_ab <= self.s_a + self.s_b + ATOL_PSD

    @property
    def triangle(self) -> bool:
        return abs(self.s_a - self.s_b) <= self.s_ab + ATOL_PSD

    @property
    def concave(self) -> Optional[bool]:
        return None if self.concavity_gap is None else self.concavity_gap >= -ATOL_PSD

    def to_dict(self):
        return {"S_A": self.s_a, "S_B": self.s_b, "S_AB": self.s_ab, "subadditive": self.subadditive,
                "triangle": self.triangle, "concavity_gap": self.concavity_gap, "concave": self.concave}


def entropy_inequalities(rho_ab: Matrixish, dims: Sequence[int], other: Optional[Matrixish] = None,
                         p: float = 0.5) -> EntropyReport:
    """Reduced and joint entropies of rho_ab; with other, also the concavity gap of p rho_ab + (1 - p) other."""
    rho_a, rho_b = reduced_states(rho_ab, dims)
    gap = None
    if other is not None:
        gap = concavity_gap(Ensemble((p, 1.0 - p), (_matrix(rho_ab), _matrix(other))))
    return EntropyReport(von_neumann_entropy(rho_a), von_neumann_entropy(rho_b), von_neumann_entropy(rho_ab), gap)


@dataclass(frozen=True)
class Ensemble:
    probabilities: Tuple[float, ...]
    members: Tuple[DensityMatrix, ...] = field(default_factory=tuple)

    def __post_init__(self):
        p = tuple(float(x) for x in self.probabilities)
        members = tuple(m if isinstance(m, DensityMatrix) else DensityMatrix(m) for m in self.members)
        if len(p) != len(members) or not p:
            raise DimensionError("ensemble needs one probability per member")
        if min(p) < 0 or abs(sum(p) - 1.0) > ATOL_ALGEBRA:
            raise InvalidStateError("ensemble probabilities must sum to 1")
        if len({m.dim for m in members}) != 1:
            raise DimensionError("ensemble members must share a dimension")
        object.__setattr__(self, "probabilities", p)
        object.__setattr__(self, "members", members)

    @classmethod
    def of_states(cls, pairs: Sequence[Tuple[float, StateVector]]):
        return cls(tuple(p for p, _ in pairs), tuple(density_from_state(s) for _, s in pairs))

    def average(self) -> DensityMatrix:
        return DensityMatrix(sum(p * m.entries for p, m in zip(self.probabilities, self.members)))


def concavity_gap(e: Ensemble) -> float:
    """S(sum p_i rho_i) - sum p_i S(rho_i); never below zero for a valid ensemble."""
    return float(von_neumann_entropy(e.average()) - sum(p * von_neumann_entropy(m)
                                                        for p, m in zip(e.probabilities, e.members)))


def holevo_chi(e: Ensemble) -> float:
    """chi = S(sum p_i rho_i) - sum p_i S(rho_i)."""
    return max(concavity_gap(e), 0.0)


def _padded_sorted(x: Sequence[float], length: int) -> np.ndarray:
    out = np.zeros(length)
    values = np.sort(np.asarray(x, dtype=float))[::-1]
    out[:values.size] = values
    return out


def majorizes(x: Sequence[float], y: Sequence[float]) -> bool:
    """True when x is majorized by y (x < y): every partial sum of the decreasingly sorted x
    stays below the matching partial sum of y, with equal totals. Shorter vectors are zero-padded."""
    length = max(len(x), len(y))
    xs, ys = np.cumsum(_padded_sorted(x, length)), np.cumsum(_padded_sorted(y, length))
    if abs(xs[-1] - ys[-1]) > MAJORIZATION_TOL:
        return False
    return bool(np.all(xs <= ys + MAJORIZATION_TOL))


def locc_convertible(psi: Union[StateVector, np.ndarray], phi: Union[StateVector, np.ndarray],
                     dims: Sequence[int]) -> bool:
    """psi -> phi by LOCC iff the Schmidt weights of psi are majorized by those of phi."""
    dA, dB = dims
    return majorizes(schmidt(psi, dA, dB).weights, schmidt(phi, dA, dB).weights)


def partial_transpose(rho: Matrixish, dims: Sequence[int], subsystem: int) -> np.ndarray:
    mat = _matrix(rho)
    dims = list(dims)
    if int(np.prod(dims)) != mat.shape[0]:
        raise DimensionError(f"factor dimensions {tuple(dims)} do not multiply to {mat.shape[0]}")
    if not 0 <= subsystem < len(dims):
        raise DimensionError(f"subsystem {subsystem} out of range for {len(dims)} factors")
    n = len(dims)
    t = mat.reshape(dims + dims)
    axes = list(range(2 * n))
    axes[subsystem], axes[n + subsystem] = axes[n + subsystem], axes[subsystem]
    return t.transpose(axes).reshape(mat.shape)


def peres_is_ppt(rho: Matrixish, dims: Sequence[int]) -> bool:
    for k in range(len(dims)):
        low = np.linalg.eigvalsh(partial_transpose(rho, dims, k)).min()
        if low < -ATOL_PSD:
            logging.debug(f"partial transpose on factor {k} has eigenvalue {low:.3e}")
            return False
    return True


def is_separable(rho: Matrixish, dims: Sequence[int]) -> bool:
    """Exact separability verdict, available where positivity of the partial transpose suffices."""
    if tuple(dims) not in SEPARABILITY_DIMS:
        raise DomainError(f"PPT decides separability only for 2x2 and 2x3 systems, got {tuple(dims)}")
    return peres_is_ppt(rho, dims)


_BELL = {
    "phi+": np.array([1, 0, 0, 1]) / np.sqrt(2),
    "phi-": np.array([1, 0, 0, -1]) / np.sqrt(2),
    "psi+": np.array([0, 1, 1, 0]) / np.sqrt(2),
    "psi-": np.array([0, 1, -1, 0]) / np.sqrt(2),
}


def bell(kind: str = "phi+") -> StateVector:
    key = kind.lower().replace(" ", "").replace("φ", "phi").replace("ψ", "psi")
    if key not in _BELL:
        raise DomainError(f"unknown Bell state {kind!r}; choose from {sorted(_BELL)}")
    return StateVector(2, 2, _BELL[key])


def bell_basis() -> List[StateVector]:
    return [bell(k) for k in ("phi+", "phi-", "psi+", "psi-")]


def ghz(num_qubits: int = 3) -> StateVector:
    if num_qubits < 2:
        raise DimensionError("GHZ needs at least two qubits")
    amps = np.zeros(2 ** num_qubits, dtype=complex)
    amps[0] = amps[-1] = 1 / np.sqrt(2)
    return StateVector(2, num_qubits, amps)
