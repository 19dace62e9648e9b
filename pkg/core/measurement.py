import logging
from dataclasses import dataclass
from typing import Dict, Sequence

import numpy as np
from joblib import Parallel, delayed

from config import ATOL_ALGEBRA, runtime_config
from core.state import StateVector, check_targets


@dataclass(frozen=True)
class MeasurementRecord:
    outcome: str  # one digit per target, in the order the targets were given
    probability: float
    post_state: StateVector


def probabilities(state: StateVector, targets: Sequence[int]) -> np.ndarray:
    """Born marginal over targets, indexed by the outcome read as a base-d number (targets[0] most significant)."""
    targets = list(targets)
    check_targets(targets, state.num_sites)
    n, d = state.num_sites, state.local_dim
    probs = np.abs(state.amplitudes.reshape((d,) * n)) ** 2
    axes = [n - 1 - t for t in targets]
    others = tuple(i for i in range(n) if i not in axes)
    marginal = probs.sum(axis=others) if others else probs
    # remaining axes are in increasing axis order; reorder to the target order
    order = sorted(axes)
    marginal = np.transpose(marginal, [order.index(a) for a in axes])
    return marginal.reshape(-1)


def _outcome_label(index: int, k: int, d: int) -> str:
    digits = []
    for _ in range(k):
        digits.append(str(index % d))
        index //= d
    return "".join(reversed(digits))


def project(state: StateVector, targets: Sequence[int], outcome: str) -> StateVector:
    """Conditional state after observing outcome on targets (renormalized)."""
    n, d = state.num_sites, state.local_dim
    psi = np.array(state.amplitudes).reshape((d,) * n)
    index = [slice(None)] * n
    mask = np.zeros_like(psi)
    for t, digit in zip(targets, outcome):
        index[n - 1 - t] = int(digit)
    mask[tuple(index)] = psi[tuple(index)]
    mask = mask.reshape(-1)
    return StateVector(d, n, mask / np.linalg.norm(mask))


def measure(state: StateVector, targets: Sequence[int], rng) -> MeasurementRecord:
    probs = probabilities(state, targets)
    probs = np.clip(probs.real, 0.0, None)
    choice = int(rng.choice(len(probs), p=probs / probs.sum()))
    outcome = _outcome_label(choice, len(targets), state.local_dim)
    return MeasurementRecord(outcome, float(probs[choice]), project(state, targets, outcome))


def _sample_batch(probs: np.ndarray, shots: int, rng) -> np.ndarray:
    return np.bincount(rng.choice(len(probs), size=shots, p=probs), minlength=len(probs))


def sample_counts(state: StateVector, targets: Sequence[int], shots: int, rng, batches: int = None) -> Dict[str, int]:
    """Many-shot Born sampling; batches use derived seeds and are merged in index order."""
    probs = np.clip(probabilities(state, targets).real, 0.0, None)
    probs = probs / probs.sum()
    batches = batches or max(1, runtime_config.n_jobs)
    sizes = [shots // batches + (1 if i < shots % batches else 0) for i in range(batches)]
    children = rng.split(batches)
    parts = Parallel(n_jobs=runtime_config.n_jobs)(
        delayed(_sample_batch)(probs, size, child) for size, child in zip(sizes, children)
    )
    total = np.sum(parts, axis=0)
    logging.debug(f"sampled {shots} shots over {batches} batches")
    return {
        _outcome_label(i, len(targets), state.local_dim): int(c)
        for i, c in enumerate(total) if c > 0 or probs[i] > ATOL_ALGEBRA
    }
