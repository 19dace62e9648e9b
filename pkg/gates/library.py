"""Standard gate matrices.

Y follows the real antisymmetric convention Y = -i sigma_y = [[0, -1], [1, 0]]; the
teleportation and dense-coding correction tables are written against it.
"""
import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, Tuple

import numpy as np

from config import ATOL_ALGEBRA
from core.errors import DomainError, NotUnitaryError
from core.state import is_unitary

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
IDENTITY = np.eye(2, dtype=complex)


@dataclass(frozen=True)
class Gate:
    name: str
    arity: int
    local_dim: int
    matrix: np.ndarray = field(repr=False)
    params: Tuple[float, ...] = ()

    def __post_init__(self):
        mat = np.array(self.matrix, dtype=complex, copy=True)
        if mat.shape != (self.local_dim ** self.arity,) * 2:
            raise DomainError(f"gate {self.name}: matrix shape {mat.shape} does not match arity {self.arity}")
        if not is_unitary(mat, ATOL_ALGEBRA):
            raise NotUnitaryError(f"gate {self.name} is not unitary")
        mat.setflags(write=False)
        object.__setattr__(self, "matrix", mat)
        object.__setattr__(self, "params", tuple(self.params))

    def dagger(self) -> "Gate":
        name = self.name[:-1] if self.name.endswith("†") else self.name + "†"
        return Gate(name, self.arity, self.local_dim, self.matrix.conj().T, self.params)


def rx(theta: float) -> np.ndarray:
    return np.cos(theta / 2) * IDENTITY - 1j * np.sin(theta / 2) * SIGMA_X


def ry(beta: float) -> np.ndarray:
    c, s = np.cos(beta / 2), np.sin(beta / 2)
    return np.array([[c, -s], [s, c]], dtype=complex)


def rz(alpha: float) -> np.ndarray:
    return np.diag([np.exp(-0.5j * alpha), np.exp(0.5j * alpha)])


def ph(delta: float) -> np.ndarray:
    return np.exp(1j * delta) * IDENTITY


def e_gate(delta: float) -> np.ndarray:
    """diag(1, e^{i delta}): the phase correction on the control wire of a controlled-U."""
    return np.diag([1.0, np.exp(1j * delta)]).astype(complex)


def controlled_matrix(u: np.ndarray, num_controls: int = 1) -> np.ndarray:
    """Dense controlled-U: U acts on the low factor when every control (high factors) is 1."""
    u = np.asarray(u, dtype=complex)
    dim = (2 ** num_controls) * u.shape[0]
    out = np.eye(dim, dtype=complex)
    out[dim - u.shape[0]:, dim - u.shape[0]:] = u
    return out


def dft_matrix(d: int) -> np.ndarray:
    """Generalized Hadamard on one qudit: entries omega^{jk}/sqrt(d)."""
    j, k = np.meshgrid(np.arange(d), np.arange(d), indexing="ij")
    return np.exp(2j * np.pi * j * k / d) / np.sqrt(d)


def qudit_cphase(theta: float, d: int) -> np.ndarray:
    a, b = np.meshgrid(np.arange(d), np.arange(d), indexing="ij")
    return np.diag(np.exp(1j * theta * (a * b).reshape(-1)))


def qudit_swap(d: int) -> np.ndarray:
    out = np.zeros((d * d, d * d), dtype=complex)
    for a in range(d):
        for b in range(d):
            out[b * d + a, a * d + b] = 1.0
    return out


def _sqrt_not(_p, _d):
    return np.exp(1j * np.pi / 4) * (IDENTITY - 1j * SIGMA_X) / np.sqrt(2)


def _sqrt_swap(_p, _d):
    h = (1 + 1j) / 2
    l = (1 - 1j) / 2
    return np.array([[1, 0, 0, 0], [0, h, l, 0], [0, l, h, 0], [0, 0, 0, 1]], dtype=complex)


def _s_theta(theta):
    return 1j * rx(theta)


def _fredkin(_p, _d):
    out = np.eye(8, dtype=complex)
    out[[5, 6]] = out[[6, 5]]
    return out


# name -> (arity, builder(params, d))
_REGISTRY: Dict[str, Tuple[int, Callable]] = {
    "I": (1, lambda p, d: np.eye(d, dtype=complex)),
    "X": (1, lambda p, d: SIGMA_X),
    "Y": (1, lambda p, d: np.array([[0, -1], [1, 0]], dtype=complex)),
    "Z": (1, lambda p, d: SIGMA_Z),
    "H": (1, lambda p, d: dft_matrix(2)),
    "SQRT_NOT": (1, _sqrt_not),
    "PH": (1, lambda p, d: ph(p[0])),
    "RX": (1, lambda p, d: rx(p[0])),
    "RY": (1, lambda p, d: ry(p[0])),
    "RZ": (1, lambda p, d: rz(p[0])),
    "E": (1, lambda p, d: e_gate(p[0])),
    "S": (1, lambda p, d: _s_theta(p[0])),
    "CNOT": (2, lambda p, d: controlled_matrix(SIGMA_X)),
    "CPH": (2, lambda p, d: controlled_matrix(np.diag([1.0, np.exp(1j * p[0])]))),
    "SWAP": (2, lambda p, d: qudit_swap(2)),
    "SQRT_SWAP": (2, _sqrt_swap),
    "TOFFOLI": (3, lambda p, d: controlled_matrix(SIGMA_X, 2)),
    "FREDKIN": (3, _fredkin),
    "DEUTSCH": (3, lambda p, d: controlled_matrix(_s_theta(p[0]), 2)),
    "DFT": (1, lambda p, d: dft_matrix(d)),
    "QCPH": (2, lambda p, d: qudit_cphase(p[0], d)),
    "QSWAP": (2, lambda p, d: qudit_swap(d)),
}

QUDIT_GATES = {"I", "DFT", "QCPH", "QSWAP"}


def standard_gate(name: str, params: Tuple[float, ...] = (), local_dim: int = 2) -> Gate:
    key = name.upper()
    if key not in _REGISTRY:
        raise DomainError(f"unknown gate '{name}'")
    params = tuple(float(p) for p in params)
    if not all(np.isfinite(params)):
        raise DomainError(f"gate {name}: angle parameters must be finite")
    if local_dim != 2 and key not in QUDIT_GATES:
        raise DomainError(f"gate {name} is only defined for qubits")
    arity, builder = _REGISTRY[key]
    try:
        matrix = builder(params, local_dim)
    except IndexError:
        raise DomainError(f"gate {name} requires a parameter")
    return Gate(key, arity, local_dim, matrix, params)


def custom_gate(name: str, matrix: np.ndarray, local_dim: int = 2) -> Gate:
    matrix = np.asarray(matrix, dtype=complex)
    arity = int(round(np.log(matrix.shape[0]) / np.log(local_dim)))
    logging.debug(f"custom gate {name} with arity {arity}")
    return Gate(name, arity, local_dim, matrix)


def gate_names():
    return sorted(_REGISTRY)
