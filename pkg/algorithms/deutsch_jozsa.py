import logging
from dataclasses import dataclass
from enum import Enum

import numpy as np

from algorithms.oracles import BooleanOracle
from core.measurement import measure, probabilities
from core.rng import make_rng
from core.state import basis_state, apply_unitary
from gates.library import dft_matrix


class Verdict(str, Enum):
    CONSTANT = "constant"
    BALANCED = "balanced"


@dataclass(frozen=True)
class DeutschJozsaResult:
    verdict: Verdict
    outcome: str
    prob_all_zero: float
    queries: int

    def to_dict(self):
        return {"verdict": self.verdict.value, "outcome": self.outcome,
                "prob_all_zero": self.prob_all_zero, "queries": self.queries}


def deutsch_jozsa(f: BooleanOracle, rng=None) -> DeutschJozsaResult:
    """Sources start in |0...0>, the target in |1>; all-zero source readout means constant."""
    rng = make_rng(rng)
    n = f.n
    start_queries = f.query_count
    sources = list(range(n, 0, -1))
    hadamard = dft_matrix(2)
    state = basis_state(1, n + 1)
    for site in range(n + 1):
        state = apply_unitary(state, hadamard, [site], check=False)
    state = f.query(state)
    for site in sources:
        state = apply_unitary(state, hadamard, [site], check=False)
    prob_zero = float(probabilities(state, sources)[0])
    record = measure(state, sources, rng)
    verdict = Verdict.CONSTANT if set(record.outcome) == {"0"} else Verdict.BALANCED
    logging.info(f"Deutsch-Jozsa on {f.name}: {verdict.value} (outcome {record.outcome})")
    return DeutschJozsaResult(verdict, record.outcome, prob_zero, f.query_count - start_queries)


@dataclass(frozen=True)
class ClassicalVerdict:
    verdict: Verdict
    evaluations: int
    error_bound: float


def deutsch_jozsa_classical(f: BooleanOracle, M: int, rng=None) -> ClassicalVerdict:
    """Compare M random evaluations against a first one; a 'constant' claim errs with probability < 2^-M."""
    rng = make_rng(rng)
    xs = rng.integers(0, 2 ** f.n, size=M + 1)
    values = {f.evaluate(int(x)) for x in xs}
    verdict = Verdict.CONSTANT if len(values) == 1 else Verdict.BALANCED
    bound = float(2.0 ** -M) if verdict is Verdict.CONSTANT else 0.0
    return ClassicalVerdict(verdict, int(np.size(xs)), bound)
