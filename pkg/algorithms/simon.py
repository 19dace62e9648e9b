import logging
from dataclasses import dataclass
from typing import Iterable, List, Union

from tenacity import Retrying, RetryError, retry_if_exception_type, stop_after_attempt

from algorithms.oracles import BooleanOracle
from config import SIMON_ROUNDS_PER_BIT
from core.errors import RetryBudgetExceeded
from core.measurement import measure
from core.rng import make_rng
from core.state import apply_unitary, basis_state
from gates.library import dft_matrix


def _as_int(v: Union[int, str]) -> int:
    return int(v, 2) if isinstance(v, str) else int(v)


def dot2(a: int, b: int) -> int:
    return bin(a & b).count("1") & 1


def _reduce(rows: Iterable[int], n: int):
    """Row-reduce over F2; returns (pivot columns, reduced rows)."""
    pivots, reduced = [], []
    for row in rows:
        for col, pr in zip(pivots, reduced):
            if (row >> col) & 1:
                row ^= pr
        if row == 0:
            continue
        col = row.bit_length() - 1
        for i, pr in enumerate(reduced):
            if (pr >> col) & 1:
                reduced[i] = pr ^ row
        pivots.append(col)
        reduced.append(row)
    return pivots, reduced


def gf2_rank(rows: Iterable[Union[int, str]], n: int) -> int:
    return len(_reduce([_as_int(r) for r in rows], n)[0])


def gf2_nullspace(rows: Iterable[Union[int, str]], n: int) -> List[int]:
    """Basis of {x : row . x = 0 for every row}, as integers whose bit i is x_i."""
    pivots, reduced = _reduce([_as_int(r) for r in rows], n)
    basis = []
    for free in range(n):
        if free in pivots:
            continue
        x = 1 << free
        for col, pr in zip(pivots, reduced):
            if (pr >> free) & 1:
                x |= 1 << col
        basis.append(x)
    return basis


def span(basis: List[int]) -> List[int]:
    out = {0}
    for b in basis:
        out |= {v ^ b for v in out}
    return sorted(out)


class _NotSpanning(Exception):
    pass


@dataclass(frozen=True)
class SimonResult:
    period: int
    samples: List[int]
    queries: int

    def to_dict(self):
        return {"period": self.period, "samples": self.samples, "queries": self.queries}


def simon_sample(f: BooleanOracle, rng) -> int:
    """One coherent run: H on the sources, U_f, H on the sources, read the sources."""
    n, m = f.n, f.m
    sources = list(range(n + m - 1, m - 1, -1))
    hadamard = dft_matrix(2)
    state = basis_state(0, n + m)
    for site in sources:
        state = apply_unitary(state, hadamard, [site], check=False)
    state = f.query(state)
    for site in sources:
        state = apply_unitary(state, hadamard, [site], check=False)
    return int(measure(state, sources, rng).outcome, 2)


def simon(f: BooleanOracle, rng=None, max_rounds: int = None) -> SimonResult:
    rng = make_rng(rng)
    n = f.n
    max_rounds = max_rounds or SIMON_ROUNDS_PER_BIT * n
    start = f.query_count
    samples: List[int] = []

    def draw():
        samples.append(simon_sample(f, rng))
        if gf2_rank(samples, n) < n - 1:
            raise _NotSpanning()

    try:
        for attempt in Retrying(stop=stop_after_attempt(max_rounds), retry=retry_if_exception_type(_NotSpanning)):
            with attempt:
                draw()
    except RetryError:
        raise RetryBudgetExceeded(f"Simon: samples did not reach rank {n - 1} within {max_rounds} runs")

    candidates = [p for p in span(gf2_nullspace(samples, n)) if p != 0]
    if len(candidates) != 1 or f.evaluate(0) != f.evaluate(candidates[0]):
        raise RetryBudgetExceeded(f"Simon: inconsistent linear system, candidates {candidates}")
    period = candidates[0]
    logging.info(f"Simon recovered period {period:0{n}b} after {len(samples)} runs")
    return SimonResult(period, samples, f.query_count - start)
