"""Order finding and factoring.

Two backends produce the measured source value q: a full state vector holding
sum_q |q>|a^q mod N> followed by the QFT (small N), and an analytic sampler drawing q
from the closed-form distribution prob(q) once r is known classically.
"""
import logging
import time
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Tuple

import numpy as np
from tenacity import Retrying, RetryError, retry_if_exception_type, stop_after_attempt

from algorithms.number_theory import (best_convergent, gcd, mod_exp, multiplicative_order, prime_power_factor,
                                      shor_register_size)
from config import (FACTOR_RETRY_BUDGET, ORDER_MULTIPLE_LIMIT, SHOR_RETRY_BUDGET, SHOR_STATEVECTOR_MAX_N,
                    runtime_config)
from core.errors import CapExceededError, DomainError, RetryBudgetExceeded
from core.measurement import sample_counts, measure
from core.rng import make_rng
from core.state import StateVector, apply_matrix
from gates.qft import qft_circuit
from utils.memory_manager import MemoryManager

EXACT_SAMPLING_MAX_Q = 2 ** 22
PEAK_WINDOW = 4096


class Backend(str, Enum):
    STATEVECTOR = "statevector"
    ANALYTIC = "analytic"


@dataclass
class ShorContext:
    N: int
    a: int
    K: int = None
    r: Optional[int] = None

    def __post_init__(self):
        if self.N < 3 or self.N % 2 == 0:
            raise DomainError(f"N must be odd and >= 3, got {self.N}")
        if gcd(self.a, self.N) != 1:
            raise DomainError(f"a={self.a} is not coprime to N={self.N}")
        self.K = shor_register_size(self.N) if self.K is None else self.K
        if not self.N ** 2 < self.Q < 2 * self.N ** 2:
            raise DomainError(f"Q=2^{self.K} is outside (N^2, 2N^2)")

    @property
    def Q(self) -> int:
        return 2 ** self.K


def _block_sizes(r: int, Q: int) -> Tuple[int, int, int]:
    """B_j = 1 + floor((Q - 1 - j) / r): (m + 1) for the first t offsets and m for the rest, Q = m r + t."""
    m, t = divmod(Q, r)
    return m, t, r - t


def _block_size(r: int, Q: int, j: int) -> int:
    if not 0 <= j < r:
        raise DomainError(f"offset j must satisfy 0 <= j < r, got {j}")
    m, t, _ = _block_sizes(r, Q)
    return m + 1 if j < t else m


def _q_array(q, Q: int) -> np.ndarray:
    # register values above 2^62 stay Python ints
    return np.atleast_1d(np.asarray(q, dtype=np.int64 if Q < 2 ** 62 else object))


def _signed_residue(x: int, Q: int) -> int:
    x %= Q
    return x - Q if x > Q // 2 else x


def _geometric_weight(q: np.ndarray, r: int, Q: int, B: int) -> np.ndarray:
    """|sum_{k<B} e^{2 pi i q r k / Q}|^2 for every q, with B a single block size."""
    q = np.asarray(q)
    if Q * r < 2 ** 62:
        residue = np.mod(q.astype(np.int64) * r, Q)  # exact reduction before going to floats
        residue = np.where(residue > Q // 2, residue - Q, residue)
        phase = residue / Q
        angle = np.pi * phase * B
    else:
        residues = [_signed_residue(int(x) * r, Q) for x in q.reshape(-1)]
        phase = np.array([x / Q for x in residues], dtype=float).reshape(q.shape)
        angle = np.array([np.pi * ((x * B) % (2 * Q)) / Q for x in residues], dtype=float).reshape(q.shape)
    den = np.sin(np.pi * phase)
    near = np.abs(phase) < 1e-6
    ratio = np.where(near, B * np.sinc(phase * B) / np.sinc(np.where(near, phase, 0.0)),
                     np.sin(angle) / np.where(near, 1.0, den))
    return ratio ** 2


def shor_prob_q_component(q, r: int, Q: int, j: int) -> np.ndarray:
    return _geometric_weight(_q_array(q, Q), r, Q, _block_size(r, Q, j)) / float(Q) ** 2


def shor_prob_q(q, r: int, Q: int):
    """prob(q) = sum_j (1/Q^2)|sum_{k<B_j} e^{2 pi i q r k/Q}|^2; B_j takes at most two values."""
    q_arr = _q_array(q, Q)
    if np.any(q_arr < 0) or np.any(q_arr >= Q):
        raise DomainError("q must satisfy 0 <= q < Q")
    m, longer, shorter = _block_sizes(r, Q)
    total = np.zeros(q_arr.shape, dtype=float)
    for b_value, multiplicity in ((m + 1, longer), (m, shorter)):
        if multiplicity:
            total += multiplicity * _geometric_weight(q_arr, r, Q, b_value)
    total /= float(Q) ** 2
    return float(total[0]) if np.ndim(q) == 0 else total


def shor_prob_q_conditional(q, r: int, Q: int, d: int):
    """Distribution of q after the second register was observed in the class of offset d: (Q/B_d) prob_d(q)."""
    value = shor_prob_q_component(q, r, Q, d) * (Q / _block_size(r, Q, d))
    return float(value[0]) if np.ndim(q) == 0 else value


def good_q_set(r: int, Q: int) -> np.ndarray:
    """q with |q r mod Q| <= r/2, the residue taken in (-Q/2, Q/2]."""
    q = np.arange(Q, dtype=np.int64)
    residue = np.mod(q * r, Q)
    residue = np.where(residue > Q // 2, residue - Q, residue)
    return q[np.abs(residue) <= r / 2]


def good_q_mass(r: int, Q: int) -> float:
    return float(np.sum(shor_prob_q(good_q_set(r, Q), r, Q)))


def order_from_measurement(q: int, Q: int, a: int, N: int) -> Optional[int]:
    """Denominator of the matching convergent, promoted through its multiples until a^r = 1 mod N."""
    if q == 0:
        return None
    c = best_convergent(q, Q, N)
    if c is None:
        return None
    r1 = c.denominator
    for k in range(1, ORDER_MULTIPLE_LIMIT + 1):
        candidate = k * r1
        if candidate >= N:
            break
        if mod_exp(a, candidate, N) == 1:
            return candidate
    return None


def modexp_state(ctx: ShorContext) -> StateVector:
    """sum_q |q>|a^q mod N> / sqrt(Q), source register on the high sites."""
    width = max(1, (ctx.N - 1).bit_length())
    if ctx.Q * ctx.N > runtime_config.max_statevector_shor:
        raise CapExceededError(f"state-vector order finding needs 2^K*N={ctx.Q * ctx.N} > cap "
                               f"{runtime_config.max_statevector_shor}")
    MemoryManager.log_memory_usage("order-finding register")
    amps = np.zeros(ctx.Q * 2 ** width, dtype=complex)
    values = np.array([mod_exp(ctx.a, q, ctx.N) for q in range(ctx.Q)])
    amps[np.arange(ctx.Q) * 2 ** width + values] = 1 / np.sqrt(ctx.Q)
    return StateVector(2, ctx.K + width, amps)


def statevector_final_state(ctx: ShorContext) -> Tuple[StateVector, List[int]]:
    state = modexp_state(ctx)
    width = state.num_sites - ctx.K
    amps = state.amplitudes
    for gate, targets in qft_circuit(ctx.K).steps:
        amps = apply_matrix(amps, gate.matrix, [t + width for t in targets], state.num_sites, 2)
    sources = list(range(state.num_sites - 1, width - 1, -1))
    return StateVector(2, state.num_sites, amps), sources


def shor_histogram(ctx: ShorContext, shots: int, rng=None) -> Dict[int, int]:
    rng = make_rng(rng)
    state, sources = statevector_final_state(ctx)
    counts = sample_counts(state, sources, shots, rng)
    return {int(k, 2): v for k, v in counts.items()}


def _sample_q_analytic(r: int, Q: int, rng) -> int:
    if Q <= EXACT_SAMPLING_MAX_Q:
        probs = shor_prob_q(np.arange(Q), r, Q)
        return int(rng.choice(Q, p=probs / probs.sum()))
    # peaks at s Q / r carry equal mass up to O(1/Q); sample one, then q exactly within its window
    centre = (rng.below(r) * Q) // r
    window = [(centre + int(offset)) % Q for offset in np.arange(-PEAK_WINDOW, PEAK_WINDOW + 1)]
    probs = shor_prob_q(_q_array(window, Q), r, Q)
    return window[int(rng.choice(len(window), p=probs / probs.sum()))]


class _Uninformative(Exception):
    pass


@dataclass
class OrderResult:
    N: int
    a: int
    Q: int
    r: int
    samples: List[int] = field(default_factory=list)
    backend: str = Backend.ANALYTIC.value
    seconds: float = 0.0

    def to_dict(self):
        return {"N": self.N, "a": self.a, "Q": self.Q, "r": self.r, "samples": self.samples,
                "backend": self.backend}


def choose_backend(N: int, backend=None) -> Backend:
    if backend is None:
        return Backend.STATEVECTOR if N <= SHOR_STATEVECTOR_MAX_N else Backend.ANALYTIC
    return Backend(backend)


def shor_order(ctx: ShorContext, backend=None, rng=None, budget: int = SHOR_RETRY_BUDGET) -> OrderResult:
    rng = make_rng(rng)
    backend = choose_backend(ctx.N, backend)
    started = time.perf_counter()
    samples: List[int] = []
    if backend is Backend.STATEVECTOR:
        state, sources = statevector_final_state(ctx)
        draw = lambda: int(measure(state, sources, rng).outcome, 2)
    else:
        true_r = multiplicative_order(ctx.a, ctx.N)
        draw = lambda: _sample_q_analytic(true_r, ctx.Q, rng)

    def attempt_once() -> int:
        q = draw()
        samples.append(q)
        r = order_from_measurement(q, ctx.Q, ctx.a, ctx.N)
        if r is None:
            raise _Uninformative(q)
        return r

    try:
        for attempt in Retrying(stop=stop_after_attempt(budget), retry=retry_if_exception_type(_Uninformative)):
            with attempt:
                r = attempt_once()
    except RetryError:
        raise RetryBudgetExceeded(f"order finding for a={ctx.a} mod {ctx.N} failed after {budget} draws")
    ctx.r = r
    elapsed = time.perf_counter() - started
    logging.info(f"order of {ctx.a} mod {ctx.N} is {r} ({len(samples)} draws, {backend.value})")
    return OrderResult(ctx.N, ctx.a, ctx.Q, r, samples, backend.value, elapsed)


class FailureCause(str, Enum):
    ODD_ORDER = "odd_order"
    MINUS_ONE = "a^(r/2) = -1 mod N"


@dataclass
class FactorResult:
    N: int
    factors: Optional[Tuple[int, int]]
    a: Optional[int] = None
    r: Optional[int] = None
    failure: Optional[str] = None
    method: str = "order_finding"
    attempts: int = 0
    failures: List[str] = field(default_factory=list)

    @property
    def succeeded(self) -> bool:
        return self.factors is not None and 1 not in self.factors

    def to_dict(self):
        return {"N": self.N, "factors": list(self.factors) if self.factors else None, "a": self.a, "r": self.r,
                "failure": self.failure, "method": self.method, "attempts": self.attempts}


def factor_with(N: int, a: int, backend=None, rng=None) -> FactorResult:
    """Single attempt with a fixed base; failure cases are reported, not retried."""
    common = gcd(a, N)
    if common > 1:
        return FactorResult(N, tuple(sorted((common, N // common))), a=a, method="gcd", attempts=1)
    r = shor_order(ShorContext(N, a), backend, rng).r
    if r % 2 == 1:
        return FactorResult(N, None, a=a, r=r, failure=FailureCause.ODD_ORDER.value, attempts=1)
    half = mod_exp(a, r // 2, N)
    pair = tuple(sorted((gcd(half - 1, N), gcd(half + 1, N))))
    if half == N - 1:
        return FactorResult(N, pair, a=a, r=r, failure=FailureCause.MINUS_ONE.value, attempts=1)
    return FactorResult(N, pair, a=a, r=r, attempts=1)


class _FactorFailed(Exception):
    pass


def factor(N: int, rng=None, backend=None, a: int = None, budget: int = FACTOR_RETRY_BUDGET) -> FactorResult:
    if N < 3 or N % 2 == 0:
        raise DomainError(f"N must be odd and >= 3, got {N}")
    power = prime_power_factor(N)
    if power is not None:
        p, k = power
        return FactorResult(N, (p, N // p), method="prime_power")
    if a is not None:
        return factor_with(N, a, backend, rng)
    rng = make_rng(rng)
    failures: List[str] = []

    def attempt_once() -> FactorResult:
        base = int(rng.integers(2, N - 1))
        result = factor_with(N, base, backend, rng)
        if not result.succeeded:
            failures.append(result.failure or "trivial factor")
            raise _FactorFailed(result.failure)
        return result

    try:
        for attempt in Retrying(stop=stop_after_attempt(budget), retry=retry_if_exception_type(
                (_FactorFailed, RetryBudgetExceeded))):
            with attempt:
                result = attempt_once()
    except RetryError:
        raise RetryBudgetExceeded(f"no factor of {N} after {budget} bases ({len(failures)} failure cases)")
    if result.factors[0] * result.factors[1] != N:
        raise DomainError(f"factor pair {result.factors} does not multiply to {N}")
    result.attempts = len(failures) + 1
    result.failures = failures
    return result


def factor_success_rate(N: int, trials: int, rng=None) -> float:
    """Fraction of random bases a whose order gives a nontrivial factor (classical order computation)."""
    rng = make_rng(rng)
    good = 0
    for _ in range(trials):
        a = int(rng.integers(2, N - 1))
        if gcd(a, N) > 1:
            good += 1
            continue
        r = multiplicative_order(a, N)
        if r % 2 == 0 and mod_exp(a, r // 2, N) != N - 1:
            good += 1
    return good / trials
