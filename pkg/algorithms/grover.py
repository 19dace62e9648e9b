"""Phase-generalized quantum search.

The kernel K = G2 G1 uses G1 = alpha P_x0 + beta Q_x0 and G2 = gamma Pbar + delta Qbar with
alpha = gamma = -1; beta = delta = 1 is the original algorithm. All closed forms work in
the reduced basis {|x0>, |x_perp>}.
"""
import logging
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from algorithms.oracles import BooleanOracle, marked_oracle
from config import GROVER_SUCCESS_THRESHOLD
from core.errors import DomainError
from core.measurement import measure
from core.rng import make_rng
from core.state import StateVector, apply_unitary
from gates.library import dft_matrix


@dataclass(frozen=True)
class GroverParams:
    beta: complex = 1.0
    delta: complex = 1.0

    def __post_init__(self):
        for name in ("beta", "delta"):
            value = complex(getattr(self, name))
            if abs(abs(value) - 1.0) > 1e-12:
                raise DomainError(f"{name} must have unit modulus, got |{name}| = {abs(value)}")
            object.__setattr__(self, name, value)

    @classmethod
    def from_phases(cls, phi_beta: float, phi_delta: float):
        return cls(np.exp(1j * phi_beta), np.exp(1j * phi_delta))

    @classmethod
    def standard(cls):
        return cls(1.0, 1.0)

    @property
    def phi(self) -> float:
        """delta = e^{i phi}."""
        return float(np.angle(self.delta))


def nearest_int(x: float) -> int:
    """[x] = floor(x + 1/2)."""
    return int(np.floor(x + 0.5))


def _check_n(N: int):
    if N < 2:
        raise DomainError(f"search space needs N >= 2, got {N}")


def grover_reduced_kernel(N: int, params: GroverParams) -> np.ndarray:
    _check_n(N)
    b, d = params.beta, params.delta
    r = np.sqrt(N - 1)
    return np.array([
        [1 + d * (1 - N), -b * (1 + d) * r],
        [(1 + d) * r, b * (1 + d - N)],
    ], dtype=complex) / N


def initial_reduced_state(N: int) -> np.ndarray:
    return np.array([1 / np.sqrt(N), np.sqrt((N - 1) / N)], dtype=complex)


def grover_spectrum(N: int, params: GroverParams) -> Tuple[complex, complex, float]:
    """Eigenvalues zeta_{1,2} from the trace and determinant, and delta_omega = omega_2 - omega_1."""
    _check_n(N)
    b, d = params.beta, params.delta
    det = b * d
    tr = -(b + d) + (1 + b) * (1 + d) / N
    root = np.sqrt(-det + tr ** 2 / 4)
    z1, z2 = tr / 2 - root, tr / 2 + root
    return complex(z1), complex(z2), float(np.angle(z2 / z1))


def grover_eigenvectors(N: int, params: GroverParams) -> Tuple[np.ndarray, np.ndarray]:
    """Normalized eigenvectors matching the eigenvalues of grover_spectrum."""
    kernel = grover_reduced_kernel(N, params)
    z1, z2, _ = grover_spectrum(N, params)
    vectors = []
    for z in (z1, z2):
        # (K - z) v = 0 using whichever row is not degenerate
        a, c = kernel[0, 0] - z, kernel[0, 1]
        v = np.array([-c, a]) if abs(a) + abs(c) > 1e-12 else np.array([kernel[1, 1] - z, -kernel[1, 0]])
        if np.linalg.norm(v) < 1e-12:
            v = np.array([1.0, 0.0]) if not vectors else np.array([-vectors[0][1].conjugate(), vectors[0][0].conjugate()])
        vectors.append(v / np.linalg.norm(v))
    return vectors[0], vectors[1]


def grover_amplitude(N: int, params: GroverParams, m: int) -> complex:
    """<x0|K^m|x_in> from the spectral form e^{i m w1}(1/sqrt N + (e^{i m dw} - 1)<x0|k2><k2|x_in>)."""
    z1, z2, dw = grover_spectrum(N, params)
    _, k2 = grover_eigenvectors(N, params)
    x_in = initial_reduced_state(N)
    w1 = np.angle(z1)
    return complex(np.exp(1j * m * w1) * (1 / np.sqrt(N) + (np.exp(1j * m * dw) - 1) * k2[0] * np.vdot(k2, x_in)))


def grover_reduced_success(N: int, params: GroverParams, m: int) -> float:
    amp = np.linalg.matrix_power(grover_reduced_kernel(N, params), m) @ initial_reduced_state(N)
    return float(abs(amp[0]) ** 2)


def grover_success_curve(N: int, params: GroverParams, m_max: int) -> np.ndarray:
    kernel = grover_reduced_kernel(N, params)
    vec = initial_reduced_state(N)
    out = np.empty(m_max + 1)
    for m in range(m_max + 1):
        out[m] = abs(vec[0]) ** 2
        vec = kernel @ vec
    return out


def grover_peak(N: int, params: GroverParams, m_max: int) -> Tuple[int, float]:
    curve = grover_success_curve(N, params, m_max)
    m = int(np.argmax(curve))
    return m, float(curve[m])


def grover_optimal_m(N: int, phi: float = 0.0) -> int:
    _check_n(N)
    if abs(phi) >= np.pi:
        raise DomainError(f"phase must satisfy |phi| < pi, got {phi}")
    return nearest_int(np.pi / (4 * np.cos(phi / 2)) * np.sqrt(N))


def grover_exact_m(N: int) -> int:
    _check_n(N)
    return nearest_int(0.5 * (np.pi / (2 * np.arcsin(1 / np.sqrt(N))) - 1))


@dataclass(frozen=True)
class GroverResult:
    n_qubits: int
    marked: int
    iterations: int
    success_probability: float
    predicted_probability: float
    outcome: int
    queries: int

    @property
    def succeeded(self) -> bool:
        return self.success_probability >= GROVER_SUCCESS_THRESHOLD

    def to_dict(self):
        return {
            "n_qubits": self.n_qubits, "marked": self.marked, "iterations": self.iterations,
            "success_probability": self.success_probability, "predicted": self.predicted_probability,
            "outcome": self.outcome, "queries": self.queries,
        }


def _hadamard_all(state: StateVector) -> StateVector:
    h = dft_matrix(2)
    for site in range(state.num_sites):
        state = apply_unitary(state, h, [site], check=False)
    return state


def grover_search(n_qubits: int, x0: int, params: GroverParams = None, m: int = None, rng=None,
                  oracle: BooleanOracle = None) -> GroverResult:
    params = params or GroverParams.standard()
    rng = make_rng(rng)
    N = 2 ** n_qubits
    if not 0 <= x0 < N:
        raise DomainError(f"marked item {x0} outside the {n_qubits}-qubit register")
    if abs(params.beta - params.delta) > 1e-12:
        logging.warning("beta != delta: success probability stays O(1/sqrt N) for large N")
    m = grover_optimal_m(N, params.phi) if m is None else m
    oracle = oracle or marked_oracle(n_qubits, x0)
    start = oracle.query_count

    amps = np.full(N, 1 / np.sqrt(N), dtype=complex)
    state = StateVector(2, n_qubits, amps)
    zero_phase = np.full(N, params.delta, dtype=complex)
    zero_phase[0] = -1.0  # gamma on the projector onto |0...0> in the Hadamard frame
    for _ in range(m):
        state = oracle.phase_query(state, marked_phase=-1.0, unmarked_phase=params.beta)
        state = _hadamard_all(state)
        state = StateVector(2, n_qubits, state.amplitudes * zero_phase)
        state = _hadamard_all(state)
    success = float(abs(state.amplitudes[x0]) ** 2)
    predicted = grover_reduced_success(N, params, m)
    outcome = int(measure(state, list(range(n_qubits - 1, -1, -1)), rng).outcome, 2)
    logging.info(f"Grover N={N}, m={m}: p(x0)={success:.6f} (reduced kernel {predicted:.6f})")
    return GroverResult(n_qubits, x0, m, success, predicted, outcome, oracle.query_count - start)
