import logging
from typing import Dict

import numpy as np

from core.errors import DomainError
from gates.circuit import Circuit


def qft_phase(k: int, d: int = 2) -> float:
    """theta_k = 2 pi / d^{k+1}."""
    return 2 * np.pi / d ** (k + 1)


def qft_circuit(K: int, d: int = 2) -> Circuit:
    """Hadamard / controlled-phase ladder on the most significant site first, then the output reversal swaps."""
    if K < 1 or d < 2:
        raise DomainError(f"QFT needs K >= 1 and d >= 2, got K={K}, d={d}")
    c = Circuit(K, d)
    hadamard, cphase, swap = ("H", "CPH", "SWAP") if d == 2 else ("DFT", "QCPH", "QSWAP")
    for l in range(K - 1, -1, -1):
        c.add(hadamard, l)
        for j in range(l - 1, -1, -1):
            c.add(cphase, j, l, params=(qft_phase(l - j, d),))
    for i in range(K // 2):
        c.add(swap, i, K - 1 - i)
    logging.debug(f"QFT circuit K={K}, d={d}: {len(c)} gates")
    return c


def qft_gate_counts(c: Circuit) -> Dict[str, int]:
    counts = c.count_by_name()
    return {
        "hadamard": counts.get("H", 0) + counts.get("DFT", 0),
        "cphase": counts.get("CPH", 0) + counts.get("QCPH", 0),
        "swap": counts.get("SWAP", 0) + counts.get("QSWAP", 0),
    }


def dft_unitary(dim: int) -> np.ndarray:
    """Reference DFT on dim levels: entries e^{2 pi i x y / dim} / sqrt(dim)."""
    x, y = np.meshgrid(np.arange(dim), np.arange(dim), indexing="ij")
    return np.exp(2j * np.pi * x * y / dim) / np.sqrt(dim)
