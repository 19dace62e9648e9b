"""CSS quantum codes from a nested pair of binary codes, and the 7-qubit Steane code.

Position i of a codeword (1-based, left to right) is qubit site n - i, so a bit string is
also the basis label of the state it names.
"""
import logging
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from codes.linear import LinearCode, as_word, dual_code, is_subcode, word_str
from core.errors import DimensionError, DomainError
from core.measurement import measure
from core.rng import make_rng
from core.state import StateVector, apply_unitary
from gates.circuit import Circuit, run
from gates.library import standard_gate

# row r of the parity matrix is read into ancilla bit r; syndrome bits come out least significant first
STEANE_PARITY = np.array([
    [1, 0, 1, 0, 1, 0, 1],
    [0, 1, 1, 0, 0, 1, 1],
    [0, 0, 0, 1, 1, 1, 1],
], dtype=np.uint8)


@dataclass
class CssCode:
    c1: LinearCode
    c2: LinearCode
    cosets: List[List[str]] = field(default_factory=list)
    basis: List[StateVector] = field(default_factory=list)

    @property
    def n(self) -> int:
        return self.c1.n

    @property
    def k(self) -> int:
        return self.c1.k - self.c2.k

    def logical(self, coefficients) -> StateVector:
        coefficients = np.asarray(coefficients, dtype=complex)
        if coefficients.shape[0] != len(self.basis):
            raise DimensionError(f"expected {len(self.basis)} logical amplitudes")
        amps = sum(c * b.amplitudes for c, b in zip(coefficients, self.basis))
        return StateVector(2, self.n, amps)

    def to_dict(self):
        return {"n": self.n, "k": self.k, "c1": self.c1.to_dict(), "c2": self.c2.to_dict(), "cosets": self.cosets}


def css_code(c1: LinearCode, c2: LinearCode) -> CssCode:
    """Basis state per coset w + C2: uniform superposition over the coset, cosets ordered by smallest member."""
    if not is_subcode(c2, c1) or c2.k >= c1.k:
        raise DomainError(f"{c2.name} is not a proper subcode of {c1.name}")
    inner = {int(word_str(v), 2) for v in c2.codewords()}
    seen, cosets = set(), []
    for w in sorted(int(word_str(v), 2) for v in c1.codewords()):
        if w in seen:
            continue
        members = sorted(w ^ v for v in inner)
        seen.update(members)
        cosets.append(members)
    basis = []
    for members in cosets:
        amps = np.zeros(2 ** c1.n, dtype=complex)
        amps[members] = 2 ** (-c2.k / 2)
        basis.append(StateVector(2, c1.n, amps))
    labels = [[format(m, f"0{c1.n}b") for m in members] for members in cosets]
    logging.debug(f"CSS code [[{c1.n},{c1.k - c2.k}]] from {c1.name} / {c2.name}")
    return CssCode(c1, c2, labels, basis)


def steane_code() -> CssCode:
    c1 = LinearCode.from_parity(STEANE_PARITY, name="H2(3)")
    return css_code(c1, dual_code(c1))


def steane_encode(alpha: complex, beta: complex) -> StateVector:
    if abs(abs(alpha) ** 2 + abs(beta) ** 2 - 1.0) > 1e-10:
        raise DomainError("logical amplitudes must be normalized")
    return steane_code().logical([alpha, beta])


def pauli_string(n: int, pos: int, kind: str) -> str:
    """Pauli kind at 1-based position pos, identity elsewhere: pauli_string(7, 3, 'X') = 'IIXIIII'."""
    kind = kind.upper()
    if len(kind) != 1 or kind not in "IXYZ":
        raise DomainError(f"unknown Pauli {kind!r}")
    if not 1 <= pos <= n:
        raise DimensionError(f"position {pos} outside 1..{n}")
    return "I" * (pos - 1) + kind + "I" * (n - pos)


def apply_pauli_string(state: StateVector, paulis: str) -> StateVector:
    if len(paulis) != state.num_sites:
        raise DimensionError(f"Pauli string of length {len(paulis)} on {state.num_sites} qubits")
    for i, p in enumerate(paulis.upper(), start=1):
        if p != "I":
            state = apply_unitary(state, standard_gate(p).matrix, [state.num_sites - i], check=False)
    return state


def _hadamard_all(state: StateVector) -> StateVector:
    h = standard_gate("H").matrix
    for site in range(state.num_sites):
        state = apply_unitary(state, h, [site], check=False)
    return state


def _syndrome_circuit(parity: np.ndarray) -> Circuit:
    """|v>|000> -> |v>|Hv> as CNOTs from each data qubit into the ancillas of the rows that contain it."""
    rows, n = parity.shape
    c = Circuit(n + rows)
    for r in range(rows):
        for i in range(n):
            if parity[r, i]:
                c.add("CNOT", n + rows - 1 - i, rows - 1 - r)
    return c


def steane_syndrome(state: StateVector, kind: str = "bit", rng=None):
    """Ancilla-extracted syndrome and the data state left behind.

    kind='phase' conjugates the data with Hadamards so phase flips read as bit flips.
    """
    if state.num_sites != 7:
        raise DimensionError("the Steane code acts on 7 qubits")
    if kind not in ("bit", "phase"):
        raise DomainError(f"syndrome kind must be 'bit' or 'phase', got {kind!r}")
    data = _hadamard_all(state) if kind == "phase" else state
    rows = STEANE_PARITY.shape[0]
    ancilla = np.zeros(2 ** rows, dtype=complex)
    ancilla[0] = 1.0
    joint = run(_syndrome_circuit(STEANE_PARITY), StateVector(2, 7 + rows, np.kron(data.amplitudes, ancilla)))
    record = measure(joint, [rows - 1 - r for r in range(rows)], make_rng(rng))
    index = int(record.outcome[::-1], 2)
    remaining = record.post_state.amplitudes.reshape(2 ** 7, 2 ** rows)[:, int(record.outcome, 2)]
    data = StateVector(2, 7, remaining / np.linalg.norm(remaining))
    if kind == "phase":
        data = _hadamard_all(data)
    return record.outcome, index, data


@dataclass(frozen=True)
class SteaneCorrection:
    state: StateVector
    bit_syndrome: str
    phase_syndrome: str
    flipped: Optional[int]
    dephased: Optional[int]
    diagnostic: str = ""

    def to_dict(self):
        return {"bit_syndrome": self.bit_syndrome, "phase_syndrome": self.phase_syndrome,
                "x_position": self.flipped, "z_position": self.dephased, "diagnostic": self.diagnostic}


def steane_correct(state: StateVector, error_applied: Optional[str] = None, rng=None) -> SteaneCorrection:
    """Apply error_applied (if given) to an encoded state, then run a bit pass and a phase pass."""
    rng = make_rng(rng)
    diagnostic = ""
    if error_applied is not None:
        weight = sum(p != "I" for p in error_applied.upper())
        if weight > 1:
            diagnostic = f"weight-{weight} error exceeds single-qubit correction; result is unreliable"
            logging.warning(diagnostic)
        state = apply_pauli_string(state, error_applied)

    bit_s, flipped, state = steane_syndrome(state, "bit", rng)
    if flipped:
        state = apply_pauli_string(state, pauli_string(7, flipped, "X"))
    phase_s, dephased, state = steane_syndrome(state, "phase", rng)
    if dephased:
        state = apply_pauli_string(state, pauli_string(7, dephased, "Z"))
    logging.debug(f"Steane syndromes bit={bit_s} phase={phase_s}")
    return SteaneCorrection(state, bit_s, phase_s, flipped or None, dephased or None, diagnostic)


def code_space_fidelity(state: StateVector, reference: StateVector) -> float:
    return float(abs(np.vdot(reference.amplitudes, state.amplitudes)) ** 2)


def word_state(word: str) -> StateVector:
    """Computational basis state named by a bit string."""
    w = as_word(word)
    amps = np.zeros(2 ** len(w), dtype=complex)
    amps[int(word_str(w), 2)] = 1.0
    return StateVector(2, len(w), amps)
