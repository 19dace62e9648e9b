"""Classical information measures, asymptotic code bounds and typical-sequence counts."""
import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence

import numpy as np
from scipy.special import comb

from config import MAX_TYPICAL_N
from core.errors import CapExceededError, DomainError


def shannon_entropy(p: Sequence[float]) -> float:
    p = np.asarray(p, dtype=float).reshape(-1)
    if p.min() < 0 or abs(p.sum() - 1.0) > 1e-9:
        raise DomainError("entropy needs a normalized distribution")
    p = p[p > 0]
    return float(-(p * np.log2(p)).sum())


def h2(p: float) -> float:
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"binary entropy needs p in [0, 1], got {p}")
    return shannon_entropy([p, 1.0 - p])


def hq(x: float, q: int) -> float:
    """q-ary entropy x log_q(q-1) - x log_q x - (1-x) log_q(1-x) on [0, 1-1/q]."""
    if q < 2:
        raise DomainError(f"alphabet size must be >= 2, got {q}")
    if not 0.0 <= x <= 1.0 - 1.0 / q + 1e-12:
        raise DomainError(f"q-ary entropy needs x in [0, 1-1/q], got {x}")
    out = x * np.log(q - 1) if q > 2 else 0.0
    for t in (x, 1.0 - x):
        if t > 0:
            out -= t * np.log(t)
    return float(out / np.log(q))


def mutual_information(joint: np.ndarray) -> float:
    """I(X:Y) = H(X) + H(Y) - H(X,Y) for a joint distribution table."""
    joint = np.asarray(joint, dtype=float)
    return shannon_entropy(joint.sum(axis=1)) + shannon_entropy(joint.sum(axis=0)) - shannon_entropy(joint)


def bsc_capacity(p: float) -> float:
    return 1.0 - h2(p)


def bound_curves(delta: float, q: int = 2) -> Dict[str, Optional[float]]:
    theta = 1.0 - 1.0 / q
    if not 0.0 <= delta <= theta + 1e-12:
        raise DomainError(f"relative distance must lie in [0, {theta:.4f}], got {delta}")
    delta = min(delta, theta)
    curves = {
        "plotkin": max(0.0, 1.0 - delta / theta),
        "hamming": 1.0 - hq(delta / 2, q),
        "bassalygo_elias": 1.0 - hq(theta - np.sqrt(theta * (theta - delta)), q),
        "gilbert_varshamov": max(0.0, 1.0 - hq(delta, q)),
        "tvz": None,
    }
    root = int(round(np.sqrt(q)))
    if root * root == q:
        curves["tvz"] = max(0.0, 1.0 - 1.0 / (root - 1) - delta)
    return curves


BOUND_COLUMNS = {"plotkin": "plotkin", "hamming": "hamming", "bassalygo_elias": "elias",
                 "gilbert_varshamov": "gv", "tvz": "tvz"}


def bound_table(q: int = 2, points: int = 101) -> List[dict]:
    """Rows (delta, plotkin, hamming, elias, gv, tvz) on an even grid over [0, 1-1/q]."""
    rows = []
    for delta in np.linspace(0.0, 1.0 - 1.0 / q, points):
        curves = bound_curves(float(delta), q)
        row = {"delta": float(delta)}
        row.update({BOUND_COLUMNS[k]: v for k, v in curves.items()})
        rows.append(row)
    return rows


def quantum_bounds(t: int, n: int) -> Dict[str, Optional[float]]:
    """Asymptotic rate bounds for qubit codes correcting t errors in n qubits."""
    if n < 1 or t < 0:
        raise DomainError(f"need n >= 1 and t >= 0, got t={t}, n={n}")
    x = t / n
    if x >= 0.75:
        raise DomainError(f"t/n must be below 3/4, got {x}")
    hamming_q = 1.0 - h2(x) - x * np.log2(3)
    gv_q = 1.0 - h2(2 * x) - 2 * x * np.log2(3) if 2 * x <= 1 else None
    return {"hamming_q": float(hamming_q), "gv_q": None if gv_q is None else float(gv_q)}


@dataclass(frozen=True)
class TypicalSet:
    n: int
    p: float
    tol: float
    count: int
    mass: float

    @property
    def rate(self) -> float:
        return float(np.log2(self.count) / self.n) if self.count else 0.0

    def to_dict(self):
        return {"n": self.n, "p": self.p, "tol": self.tol, "count": self.count, "mass": self.mass,
                "rate": self.rate, "entropy": h2(self.p)}


def typical_count(p: float, n: int, tol: float) -> TypicalSet:
    """Binary strings of length n whose fraction of zeros lies within tol of p, zeros having probability p."""
    if n > MAX_TYPICAL_N:
        raise CapExceededError(f"typical-set enumeration capped at n={MAX_TYPICAL_N}, got {n}")
    if not 0.0 <= p <= 1.0 or tol < 0:
        raise DomainError(f"need p in [0, 1] and tol >= 0, got p={p}, tol={tol}")
    count, mass = 0, 0.0
    for zeros in range(n + 1):
        if abs(zeros / n - p) <= tol + 1e-12:
            ways = int(comb(n, zeros, exact=True))
            count += ways
            mass += ways * p ** zeros * (1 - p) ** (n - zeros)
    logging.debug(f"typical set n={n}, p={p}, tol={tol}: {count} strings, mass {mass:.4f}")
    return TypicalSet(n, p, tol, count, float(mass))
