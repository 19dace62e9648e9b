"""Exact synthesis of multiply-controlled unitaries over one-qubit gates and CNOT.

A single-control gate follows U = Ph(delta) Rz(alpha) Ry(beta) Rz(gamma) and the factors
U1 U2 U3 = 1, U1 X U2 X U3 = Ubar. More controls use the square-root recursion

    C^n U = C^{n-1}W . C^{n-1}NOT . CW^dagger . C^{n-1}NOT . CW,   W^2 = U

(rightmost first), with the inner multi-controlled NOTs built from Toffoli ladders that
borrow idle qubits in an unknown state and restore them.
"""
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import List, Sequence, Tuple

import numpy as np
from scipy.linalg import schur

from config import ATOL_ALGEBRA
from core.errors import DimensionError, DomainError, NotUnitaryError
from core.state import is_unitary
from gates.circuit import Circuit
from gates.library import Gate, SIGMA_X, custom_gate, ph, ry, rz, standard_gate

_ZERO = 1e-14


@dataclass(frozen=True)
class EulerDecomposition:
    delta: float
    alpha: float
    beta: float
    gamma: float

    def matrix(self) -> np.ndarray:
        return ph(self.delta) @ rz(self.alpha) @ ry(self.beta) @ rz(self.gamma)


def euler_decompose(u: np.ndarray) -> EulerDecomposition:
    u = np.asarray(u, dtype=complex)
    if u.shape != (2, 2) or not is_unitary(u):
        raise NotUnitaryError("Euler decomposition needs a 2x2 unitary")
    delta = float(np.angle(np.linalg.det(u)) / 2)
    ubar = np.exp(-1j * delta) * u
    beta = float(2 * np.arctan2(abs(ubar[1, 0]), abs(ubar[0, 0])))
    cos_part, sin_part = abs(ubar[0, 0]), abs(ubar[1, 0])
    if sin_part < _ZERO:
        alpha, gamma = -2 * np.angle(ubar[0, 0]), 0.0
    elif cos_part < _ZERO:
        alpha, gamma = 2 * np.angle(ubar[1, 0]), 0.0
    else:
        total = -2 * np.angle(ubar[0, 0])
        diff = 2 * np.angle(ubar[1, 0])
        alpha, gamma = (total + diff) / 2, (total - diff) / 2
    result = EulerDecomposition(delta, float(alpha), beta, float(gamma))
    error = np.abs(result.matrix() - u).max()
    if error > ATOL_ALGEBRA:
        logging.warning(f"Euler reconstruction error {error:.2e}")
    return result


def abc_factors(u_bar: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    u_bar = np.asarray(u_bar, dtype=complex)
    if u_bar.shape != (2, 2) or not is_unitary(u_bar) or abs(np.linalg.det(u_bar) - 1) > ATOL_ALGEBRA:
        raise DomainError("ABC factoring needs an SU(2) matrix")
    e = euler_decompose(u_bar)
    a, b, g = e.alpha, e.beta, e.gamma
    u1 = rz(a) @ ry(b / 2)
    u2 = ry(-b / 2) @ rz(-(a + g) / 2)
    u3 = rz((g - a) / 2)
    return u1, u2, u3


def unitary_sqrt(u: np.ndarray) -> np.ndarray:
    """Principal square root of a unitary via its complex Schur form."""
    t, z = schur(np.asarray(u, dtype=complex), output="complex")
    return z @ np.diag(np.sqrt(np.diag(t))) @ z.conj().T


Step = Tuple[Gate, Tuple[int, ...]]


def _cu_steps(u: np.ndarray, control: int, target: int) -> List[Step]:
    e = euler_decompose(u)
    u1, u2, u3 = abc_factors(np.exp(-1j * e.delta) * np.asarray(u, dtype=complex))
    cnot = standard_gate("CNOT")
    return [
        (custom_gate("U3", u3), (target,)),
        (cnot, (control, target)),
        (custom_gate("U2", u2), (target,)),
        (cnot, (control, target)),
        (custom_gate("U1", u1), (target,)),
        (standard_gate("E", (e.delta,)), (control,)),
    ]


def _mcx_steps(controls: Sequence[int], target: int, borrowed: Sequence[int]) -> List[Step]:
    """Multi-controlled NOT; borrowed qubits may hold anything and are returned unchanged."""
    controls = list(controls)
    m = len(controls)
    if m == 1:
        return [(standard_gate("CNOT"), (controls[0], target))]
    if m == 2:
        return _controlled_steps(SIGMA_X, controls, target)
    borrowed = [q for q in borrowed if q not in controls and q != target]
    if len(borrowed) >= m - 2:
        return _ladder_steps(controls, target, borrowed[:m - 2])
    if not borrowed:
        raise DimensionError(f"a {m}-controlled NOT needs at least one borrowed qubit")
    spare = borrowed[0]
    half = (m + 1) // 2
    first, second = controls[:half], controls[half:]
    to_spare = _mcx_steps(first, spare, second + [target])
    to_target = _mcx_steps(second + [spare], target, first)
    return to_spare + to_target + to_spare + to_target


def _ladder_steps(controls: List[int], target: int, work: List[int]) -> List[Step]:
    m = len(controls)
    x, w = controls, work

    def tof(a, b, c):
        return _controlled_steps(SIGMA_X, [a, b], c)

    down = [tof(x[m - 1], w[m - 3], target)]
    down += [tof(x[i], w[i - 2], w[i - 1]) for i in range(m - 2, 1, -1)]
    middle = tof(x[0], x[1], w[0])
    inner = [tof(x[i], w[i - 2], w[i - 1]) for i in range(m - 2, 1, -1)]
    sequence_a = down + [middle] + list(reversed(down))
    sequence_b = inner + [middle] + list(reversed(inner))
    return [step for block in sequence_a + sequence_b for step in block]


def _controlled_steps(u: np.ndarray, controls: Sequence[int], target: int) -> List[Step]:
    controls = list(controls)
    if len(controls) == 1:
        return _cu_steps(u, controls[0], target)
    w = unitary_sqrt(u)
    last, rest = controls[-1], controls[:-1]
    flip = _mcx_steps(rest, last, [target])
    return (_cu_steps(w, last, target) + flip + _cu_steps(w.conj().T, last, target) + flip
            + _controlled_steps(w, rest, target))


def synthesize_controlled_u(u: np.ndarray, num_controls: int) -> Circuit:
    """Controls occupy sites num_controls..1 and the target is site 0, matching controlled_matrix."""
    u = np.asarray(u, dtype=complex)
    if num_controls < 1:
        raise DomainError("at least one control is required")
    if u.shape != (2, 2) or not is_unitary(u):
        raise NotUnitaryError("controlled synthesis needs a 2x2 unitary")
    circuit = Circuit(num_controls + 1)
    controls = list(range(num_controls, 0, -1))
    for gate, targets in _controlled_steps(u, controls, 0):
        circuit.append(gate, targets)
    logging.info(f"synthesized C^{num_controls}U with {len(circuit)} gates")
    return circuit


def mcx_circuit(controls: Sequence[int], target: int, borrowed: Sequence[int], num_sites: int) -> Circuit:
    circuit = Circuit(num_sites)
    for gate, targets in _mcx_steps(controls, target, borrowed):
        circuit.append(gate, targets)
    return circuit


@lru_cache(maxsize=None)
def mcx_cost(m: int, borrowed: int) -> int:
    if m == 1:
        return 1
    if m == 2:
        return controlled_u_cost(2)
    if borrowed >= m - 2:
        return 4 * (m - 2) * controlled_u_cost(2)
    half = (m + 1) // 2
    rest = m - half
    return 2 * mcx_cost(half, rest + 1) + 2 * mcx_cost(rest + 1, half)


@lru_cache(maxsize=None)
def controlled_u_cost(n: int) -> int:
    """Elementary gate count of synthesize_controlled_u: 6 for one control, then 2 CU + 2 C^{n-1}NOT + C^{n-1}U."""
    if n < 1:
        raise DomainError("at least one control is required")
    if n == 1:
        return 6
    return 2 * 6 + 2 * mcx_cost(n - 1, 1) + controlled_u_cost(n - 1)
