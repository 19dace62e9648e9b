import logging
import threading
from typing import Callable, Dict, Optional, Sequence

import numpy as np

from core.errors import DimensionError
from core.state import StateVector

# Global lock for thread safety of query counters
_query_lock = threading.RLock()


class BooleanOracle:
    """Black box f: {0,1}^n -> {0,1}^m evaluated coherently as |x>|y> -> |x>|y xor f(x)>.

    The source register x occupies the high sites, the target register y the low m sites.
    """

    def __init__(self, n: int, m: int, func: Callable[[int], int], name: str = "f"):
        if n < 1 or m < 1:
            raise DimensionError(f"oracle needs n, m >= 1, got n={n}, m={m}")
        self.n = n
        self.m = m
        self.name = name
        self._table = np.array([int(func(x)) & ((1 << m) - 1) for x in range(2 ** n)], dtype=np.int64)
        self.query_count = 0
        self.classical_count = 0

    @classmethod
    def from_table(cls, table: Sequence[int], m: int = 1, name: str = "f"):
        n = int(np.log2(len(table)))
        if 2 ** n != len(table):
            raise DimensionError("oracle table length must be a power of two")
        return cls(n, m, lambda x: table[x], name)

    @property
    def table(self) -> np.ndarray:
        return self._table.copy()

    def evaluate(self, x: int) -> int:
        """Classical evaluation; counted separately from coherent queries."""
        with _query_lock:
            self.classical_count += 1
        return int(self._table[x])

    def permutation(self) -> np.ndarray:
        """Index map of U_f on the n+m qubit register: new index of basis state x*2^m + y."""
        x = np.repeat(np.arange(2 ** self.n), 2 ** self.m)
        y = np.tile(np.arange(2 ** self.m), 2 ** self.n)
        return x * 2 ** self.m + (y ^ self._table[x])

    def unitary(self) -> np.ndarray:
        dim = 2 ** (self.n + self.m)
        u = np.zeros((dim, dim), dtype=complex)
        u[self.permutation(), np.arange(dim)] = 1.0
        return u

    def query(self, state: StateVector) -> StateVector:
        if state.local_dim != 2 or state.num_sites != self.n + self.m:
            raise DimensionError(f"oracle {self.name} acts on {self.n + self.m} qubits")
        with _query_lock:
            self.query_count += 1
        amps = np.zeros_like(state.amplitudes)
        amps[self.permutation()] = state.amplitudes
        logging.debug(f"oracle {self.name} query #{self.query_count}")
        return StateVector(2, state.num_sites, amps)

    def phase_query(self, state: StateVector, marked_phase: complex = -1.0, unmarked_phase: complex = 1.0) -> StateVector:
        """Phase form of U_f on the source register alone: the kickback of a |-> target, generalized to two phases."""
        if self.m != 1 or state.num_sites != self.n:
            raise DimensionError(f"phase query needs a one-bit oracle on {self.n} source qubits")
        with _query_lock:
            self.query_count += 1
        phases = np.where(self._table == 1, marked_phase, unmarked_phase)
        return StateVector(2, self.n, state.amplitudes * phases)

    def reset_counts(self):
        with _query_lock:
            self.query_count = 0
            self.classical_count = 0


def constant_oracle(n: int, value: int = 0) -> BooleanOracle:
    return BooleanOracle(n, 1, lambda x: value, name=f"const{value}")


def balanced_bit_oracle(n: int, bit: int = 0) -> BooleanOracle:
    """f(x) = x_bit."""
    return BooleanOracle(n, 1, lambda x: (x >> bit) & 1, name=f"x_{bit}")


def parity_oracle(n: int, mask: int) -> BooleanOracle:
    return BooleanOracle(n, 1, lambda x: bin(x & mask).count("1") & 1, name=f"parity_{mask:b}")


def period_oracle(n: int, period: int, labels: Optional[Dict[int, int]] = None) -> BooleanOracle:
    """Two-to-one f with f(x) = f(x xor period), labelling each pair by its smaller member."""
    if not 0 < period < 2 ** n:
        raise DimensionError("period must be a nonzero n-bit string")
    reps = sorted({min(x, x ^ period) for x in range(2 ** n)})
    label = labels or {r: i for i, r in enumerate(reps)}
    m = max(1, int(np.ceil(np.log2(max(label.values()) + 1))))
    return BooleanOracle(n, m, lambda x: label[min(x, x ^ period)], name=f"period_{period:0{n}b}")


def marked_oracle(n: int, x0: int) -> BooleanOracle:
    return BooleanOracle(n, 1, lambda x: int(x == x0), name=f"mark_{x0}")
