"""Liquid-state NMR in the product-operator picture.

A deviation matrix is kept as coefficients over products of single-spin operators. Key "ZI" is
S1z, "XZ" is 2 S1x S2z and in general a key with m non-identity factors stands for
2^(m-1) times the product of the S = sigma/2 factors; the all-identity key stands for the unit
matrix. Spin 1 is the first character and the most significant tensor factor. Signal-strength
prefactors are dropped.
"""
import itertools
import logging
from dataclasses import dataclass, field
from functools import reduce
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.linalg import expm

from config import ATOL_ALGEBRA
from core.errors import DimensionError, DomainError, InvalidStateError
from gates.library import IDENTITY, SIGMA_X, SIGMA_Y, SIGMA_Z

PAULI = {"I": IDENTITY, "X": SIGMA_X, "Y": SIGMA_Y, "Z": SIGMA_Z}
COEFF_ATOL = 1e-12


def _basis_operator(key: str) -> np.ndarray:
    op = reduce(np.kron, [PAULI[ch] for ch in key])
    return op if set(key) == {"I"} else op / 2


def _single_spin(n: int, spin: int, axis: str) -> np.ndarray:
    """S_spin^axis on n spins, spin counted from 1."""
    if not 1 <= spin <= n:
        raise DimensionError(f"spin {spin} outside 1..{n}")
    key = ["I"] * n
    key[spin - 1] = axis.upper()
    return reduce(np.kron, [PAULI[ch] for ch in key]) / 2


def _term_name(key: str) -> str:
    factors = [f"S{i + 1}{ch.lower()}" for i, ch in enumerate(key) if ch != "I"]
    if not factors:
        return "1"
    prefix = "" if len(factors) == 1 else str(2 ** (len(factors) - 1))
    return prefix + "".join(factors)


@dataclass
class ProductOperatorState:
    num_spins: int
    coefficients: Dict[str, float] = field(default_factory=dict)

    def __post_init__(self):
        for key in self.coefficients:
            if len(key) != self.num_spins or any(ch not in PAULI for ch in key.upper()):
                raise DomainError(f"bad product-operator key {key!r} for {self.num_spins} spins")
        self.coefficients = {k.upper(): float(v) for k, v in self.coefficients.items() if abs(v) > COEFF_ATOL}

    @classmethod
    def from_matrix(cls, matrix: np.ndarray) -> "ProductOperatorState":
        matrix = np.asarray(matrix, dtype=complex)
        n = int(round(np.log2(matrix.shape[0])))
        if matrix.shape != (2 ** n, 2 ** n):
            raise DimensionError(f"deviation matrix of shape {matrix.shape} is not a {n}-spin operator")
        if not np.allclose(matrix, matrix.conj().T, atol=ATOL_ALGEBRA):
            raise InvalidStateError("deviation matrix must be Hermitian")
        coefficients = {}
        for letters in itertools.product("IXYZ", repeat=n):
            key = "".join(letters)
            b = _basis_operator(key)
            c = np.trace(b.conj().T @ matrix) / np.trace(b.conj().T @ b)
            if abs(c) > COEFF_ATOL:
                coefficients[key] = float(c.real)
        return cls(n, coefficients)

    def to_matrix(self) -> np.ndarray:
        out = np.zeros((2 ** self.num_spins,) * 2, dtype=complex)
        for key, c in self.coefficients.items():
            out += c * _basis_operator(key)
        return out

    def coefficient(self, key: str) -> float:
        return self.coefficients.get(key.upper(), 0.0)

    def isclose(self, other: "ProductOperatorState", atol: float = ATOL_ALGEBRA) -> bool:
        keys = set(self.coefficients) | set(other.coefficients)
        return self.num_spins == other.num_spins and all(
            abs(self.coefficient(k) - other.coefficient(k)) <= atol for k in keys)

    def describe(self) -> str:
        if not self.coefficients:
            return "0"
        return " + ".join(f"{c:.4g} {_term_name(k)}" for k, c in sorted(self.coefficients.items()))

    def to_dict(self):
        return {_term_name(k): c for k, c in sorted(self.coefficients.items())}


@dataclass(frozen=True)
class NmrPulse:
    """kind: 'x', 'y' or 'z' rotation of one spin, 'J' free coupling between two spins, or 'grad'."""
    kind: str
    angle: float = 0.0
    spins: Tuple[int, ...] = ()

    def __post_init__(self):
        if self.kind not in ("x", "y", "z", "J", "grad"):
            raise DomainError(f"unknown NMR pulse {self.kind!r}")
        if self.kind in "xyz" and len(self.spins) != 1:
            raise DomainError(f"[{self.angle}]^{self.kind} acts on exactly one spin")
        if self.kind == "J" and len(self.spins) != 2:
            raise DomainError("a coupling period needs two spins")

    def label(self) -> str:
        if self.kind == "grad":
            return "[grad]z"
        where = "".join(str(s) for s in self.spins) if self.kind != "J" else ""
        return f"[{self.angle:.4g}]{where}{self.kind}"

    def propagator(self, n: int) -> Optional[np.ndarray]:
        if self.kind == "grad":
            return None
        if self.kind == "J":
            a, b = self.spins
            generator = 2 * _single_spin(n, a, "z") @ _single_spin(n, b, "z")
        else:
            generator = _single_spin(n, self.spins[0], self.kind)
        return expm(-1j * self.angle * generator)


def rot(angle: float, spin: int, axis: str) -> NmrPulse:
    return NmrPulse(axis, angle, (spin,))


def coupling(angle: float, a: int = 1, b: int = 2) -> NmrPulse:
    return NmrPulse("J", angle, (a, b))


GRADIENT = NmrPulse("grad")


def nmr_pulse(pulse: NmrPulse, state: ProductOperatorState) -> ProductOperatorState:
    """Conjugate the deviation matrix by the pulse propagator; a z gradient drops every transverse term."""
    if pulse.kind == "grad":
        kept = {k: c for k, c in state.coefficients.items() if "X" not in k and "Y" not in k}
        return ProductOperatorState(state.num_spins, kept)
    u = pulse.propagator(state.num_spins)
    return ProductOperatorState.from_matrix(u @ state.to_matrix() @ u.conj().T)


def nmr_sequence(pulses: Sequence[NmrPulse], state: ProductOperatorState) -> List[Tuple[str, ProductOperatorState]]:
    """Every intermediate state, starting with the input."""
    trace = [("start", state)]
    for p in pulses:
        state = nmr_pulse(p, state)
        trace.append((p.label(), state))
        logging.debug(f"{p.label()} -> {state.describe()}")
    return trace


def sequence_unitary(pulses: Sequence[NmrPulse], n: int = 2) -> np.ndarray:
    u = np.eye(2 ** n, dtype=complex)
    for p in pulses:
        if p.kind == "grad":
            raise DomainError("a gradient is not unitary")
        u = p.propagator(n) @ u
    return u


def thermal_deviation(n: int = 2) -> ProductOperatorState:
    """High-temperature deviation S1z + ... + Snz with equal gyromagnetic factors."""
    if n < 1:
        raise DimensionError("need at least one spin")
    keys = ["I" * i + "Z" + "I" * (n - 1 - i) for i in range(n)]
    return ProductOperatorState(n, {k: 1.0 for k in keys})


def pseudo_pure_density(state: ProductOperatorState) -> np.ndarray:
    """1/2^n plus the deviation."""
    return np.eye(2 ** state.num_spins) / 2 ** state.num_spins + state.to_matrix()


PSEUDO_PURE_PULSES = [rot(np.pi / 3, 2, "x"), GRADIENT, rot(np.pi / 4, 1, "x"), coupling(np.pi / 2),
                      rot(-np.pi / 4, 1, "y"), GRADIENT]

_R = np.sqrt(0.5)
PSEUDO_PURE_TRACE = [
    {"ZI": 1.0, "IZ": 1.0},
    {"ZI": 1.0, "IZ": 0.5, "IY": -np.sqrt(3) / 2},
    {"ZI": 1.0, "IZ": 0.5},
    {"ZI": _R, "YI": -_R, "IZ": 0.5},
    {"ZI": _R, "XZ": _R, "IZ": 0.5},
    {"ZI": 0.5, "XI": -0.5, "XZ": 0.5, "IZ": 0.5, "ZZ": 0.5},
    {"ZI": 0.5, "IZ": 0.5, "ZZ": 0.5},
]


def nmr_prepare_pseudo_pure() -> List[Tuple[str, ProductOperatorState]]:
    """Thermal S1z + S2z to (S1z + S2z + 2 S1z S2z)/2, the deviation of |00><00|, checked line by line."""
    trace = nmr_sequence(PSEUDO_PURE_PULSES, thermal_deviation(2))
    for step, ((label, got), expected) in enumerate(zip(trace, PSEUDO_PURE_TRACE)):
        if not got.isclose(ProductOperatorState(2, expected)):
            raise InvalidStateError(f"preparation step {step} ({label}) gave {got.describe()}")
    return trace


def reference_deviation() -> ProductOperatorState:
    return ProductOperatorState(2, {"II": 0.25, "ZI": 0.5, "IZ": 0.5, "ZZ": 0.5})


BELL_PULSES = [rot(-np.pi / 2, 2, "x"), rot(np.pi / 2, 1, "y"), coupling(np.pi / 2), rot(-np.pi / 2, 1, "y"),
               rot(np.pi / 2, 2, "x")]

BELL_DEVIATION = {"II": 0.25, "ZZ": 0.5, "XX": 0.5, "YY": -0.5}


def nmr_bell_sequence(start: Optional[ProductOperatorState] = None) -> ProductOperatorState:
    """Maps the |00> deviation to (1/2 + 2 S1zS2z + 2 S1xS2x - 2 S1yS2y)/2."""
    state = start or reference_deviation()
    out = nmr_sequence(BELL_PULSES, state)[-1][1]
    if start is None and not out.isclose(ProductOperatorState(2, BELL_DEVIATION)):
        raise InvalidStateError(f"Bell sequence produced {out.describe()}")
    return out


CNOT_PULSES = [rot(np.pi / 2, 2, "y"), coupling(np.pi / 2), rot(np.pi / 2, 1, "z"), rot(-np.pi / 2, 2, "z"),
               rot(-np.pi / 2, 2, "y")]


def nmr_cnot_sequence() -> np.ndarray:
    """Propagator of the CNOT pulse sequence; equals e^{-i pi/4} CNOT."""
    return sequence_unitary(CNOT_PULSES, 2)


def superoperator_distance(pulses: Sequence[NmrPulse], target: np.ndarray) -> float:
    """Largest coefficient error over all 16 basis operators between the sequence and conjugation by target."""
    worst = 0.0
    for letters in itertools.product("IXYZ", repeat=2):
        key = "".join(letters)
        state = ProductOperatorState(2, {key: 1.0})
        got = nmr_sequence(pulses, state)[-1][1].to_matrix()
        want = target @ state.to_matrix() @ target.conj().T
        worst = max(worst, float(np.abs(got - want).max()))
    return worst


def nmr_signal(state: ProductOperatorState) -> complex:
    """Tr(sum_i S_i^+ rho) with S^+ = Sx + i Sy."""
    n = state.num_spins
    raising = sum(_single_spin(n, i, "x") + 1j * _single_spin(n, i, "y") for i in range(1, n + 1))
    return complex(np.trace(raising @ state.to_matrix()))
