import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import List, Sequence, Tuple

import numpy as np

from config import runtime_config
from core.errors import DimensionError
from core.serialization import complex_to_pairs, pairs_to_complex
from core.state import StateVector, apply_matrix, check_targets
from gates.library import Gate, custom_gate, standard_gate, _REGISTRY
from utils.memory_manager import MemoryManager


@dataclass
class Circuit:
    num_sites: int
    local_dim: int = 2
    steps: List[Tuple[Gate, Tuple[int, ...]]] = field(default_factory=list)

    def append(self, gate: Gate, targets: Sequence[int]) -> "Circuit":
        targets = tuple(int(t) for t in targets)
        check_targets(targets, self.num_sites)
        if gate.arity != len(targets) or gate.local_dim != self.local_dim:
            raise DimensionError(f"gate {gate.name} (arity {gate.arity}, d={gate.local_dim}) does not fit targets {targets}")
        self.steps.append((gate, targets))
        return self

    def add(self, name: str, *targets: int, params: Tuple[float, ...] = ()) -> "Circuit":
        return self.append(standard_gate(name, params, self.local_dim), targets)

    def extend(self, other: "Circuit") -> "Circuit":
        if other.num_sites > self.num_sites or other.local_dim != self.local_dim:
            raise DimensionError("cannot extend with a wider circuit")
        for gate, targets in other.steps:
            self.append(gate, targets)
        return self

    def inverse(self) -> "Circuit":
        return Circuit(self.num_sites, self.local_dim, [(g.dagger(), t) for g, t in reversed(self.steps)])

    def __len__(self):
        return len(self.steps)

    def count_by_name(self) -> Counter:
        return Counter(g.name.rstrip("†") for g, _ in self.steps)

    def count_by_arity(self) -> Counter:
        return Counter(g.arity for g, _ in self.steps)

    @property
    def dim(self) -> int:
        return self.local_dim ** self.num_sites


def circuit_unitary(c: Circuit) -> np.ndarray:
    """Product of the lifted gate matrices, last step leftmost."""
    MemoryManager.check_dense_dim(c.dim, "circuit unitary", runtime_config.max_dense_dim)
    n, d = c.num_sites, c.local_dim
    # each column is evolved as a state; the column index rides along as a trailing batch axis
    columns = np.eye(c.dim, dtype=complex).reshape((d,) * n + (c.dim,))
    for gate, targets in c.steps:
        k = len(targets)
        axes = [n - 1 - t for t in targets]
        op = gate.matrix.reshape((d,) * (2 * k))
        columns = np.moveaxis(np.tensordot(op, columns, axes=(list(range(k, 2 * k)), axes)), list(range(k)), axes)
    return columns.reshape(c.dim, c.dim)


def run(c: Circuit, s: StateVector) -> StateVector:
    if s.num_sites != c.num_sites or s.local_dim != c.local_dim:
        raise DimensionError(f"circuit on {c.num_sites} sites cannot run a {s.num_sites}-site state")
    MemoryManager.check_dense_dim(c.dim, "state vector", runtime_config.max_dense_dim)
    amps = s.amplitudes
    for gate, targets in c.steps:
        amps = apply_matrix(amps, gate.matrix, targets, c.num_sites, c.local_dim)
    logging.debug(f"ran {len(c)} gates on {c.num_sites} sites")
    return StateVector(c.local_dim, c.num_sites, amps)


def ghz_circuit() -> Circuit:
    """H on the top qubit, then CNOTs fanning out to the two lower qubits."""
    return Circuit(3).add("H", 2).add("CNOT", 2, 1).add("CNOT", 2, 0)


def circuit_to_json(c: Circuit) -> dict:
    steps = []
    for gate, targets in c.steps:
        entry = {"gate": gate.name, "params": list(gate.params), "targets": list(targets)}
        if gate.name.rstrip("†") not in _REGISTRY or gate.name.endswith("†"):
            entry["matrix"] = complex_to_pairs(gate.matrix)
        steps.append(entry)
    return {"sites": c.num_sites, "local_dim": c.local_dim, "steps": steps}


def circuit_from_json(data: dict) -> Circuit:
    c = Circuit(int(data["sites"]), int(data.get("local_dim", 2)))
    for step in data["steps"]:
        if "matrix" in step:
            gate = custom_gate(step["gate"], pairs_to_complex(step["matrix"]), c.local_dim)
            gate = Gate(step["gate"], gate.arity, c.local_dim, gate.matrix, tuple(step.get("params", ())))
        else:
            gate = standard_gate(step["gate"], tuple(step.get("params", ())), c.local_dim)
        c.append(gate, step["targets"])
    return c
