"""Werner states and the recurrence distillation protocol.

Pairs are shared between Alice (first qubit) and Bob (second qubit). One round takes two
Werner pairs, rotates both towards Phi+, runs a bilateral CNOT from the source pair onto the
target pair, measures the target pair and keeps the source when both results agree.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Union

import numpy as np
from sympy import Rational

from config import ATOL_ALGEBRA
from core.density import DensityMatrix, fidelity_to_pure, partial_trace
from core.errors import DomainError
from core.rng import make_rng
from gates.circuit import Circuit, circuit_unitary
from gates.library import standard_gate
from qinfo.entanglement import bell, bell_basis

Number = Union[float, int, Fraction, Rational]


@dataclass(frozen=True)
class WernerState:
    F: float
    rho: DensityMatrix

    def __post_init__(self):
        singlet = fidelity_to_pure(self.rho, bell("psi-"))
        if abs(singlet - self.F) > 1e-12:
            raise DomainError(f"Werner state singlet fidelity {singlet} does not match F={self.F}")


def werner(F: float) -> WernerState:
    """F |Psi-><Psi-| plus weight (1-F)/3 on each of the other Bell projectors."""
    F = float(F)
    if not 0.0 <= F <= 1.0:
        raise DomainError(f"Werner fidelity must lie in [0, 1], got {F}")
    singlet = bell("psi-").amplitudes
    proj = np.outer(singlet, singlet.conj())
    rho = F * proj + (1 - F) / 3 * (np.eye(4) - proj)
    return WernerState(F, DensityMatrix(rho))


def werner_twirl(rho: Union[DensityMatrix, np.ndarray]) -> WernerState:
    """Replace a two-qubit state by the Werner state with the same singlet fidelity."""
    mat = rho if isinstance(rho, DensityMatrix) else DensityMatrix(rho)
    return werner(fidelity_to_pure(mat, bell("psi-")))


def bell_weights(rho: Union[DensityMatrix, np.ndarray]) -> Dict[str, float]:
    mat = rho if isinstance(rho, DensityMatrix) else DensityMatrix(rho)
    return {name: fidelity_to_pure(mat, b) for name, b in zip(("phi+", "phi-", "psi+", "psi-"), bell_basis())}


def _check_purifying(F):
    if not 0.5 < float(F) <= 1:
        raise DomainError(f"recurrence distillation needs 1/2 < F <= 1, got {F}")


def bbpssw_map(F: Number) -> Number:
    """Output fidelity of a successful round. Exact for rational input, float otherwise."""
    exact = isinstance(F, (int, Fraction, Rational))
    _check_purifying(F)
    if exact:
        f = Rational(F.numerator, F.denominator) if isinstance(F, Fraction) else Rational(F)
        ninth = Rational(1, 9)
    else:
        f, ninth = float(F), 1 / 9
    g = 1 - f
    num = f ** 2 + ninth * g ** 2
    den = f ** 2 + 6 * ninth * f * g + 5 * ninth * g ** 2
    return num / den


def bbpssw_success(F: Number) -> float:
    """Probability that the two target measurements agree."""
    f = float(F)
    g = 1 - f
    return f ** 2 + 2 / 3 * f * g + 5 / 9 * g ** 2


def _round_unitary() -> np.ndarray:
    # sites: A1=3, B1=2 (source pair), A2=1, B2=0 (target pair)
    c = Circuit(4).add("Y", 3).add("Y", 1).add("CNOT", 3, 1).add("CNOT", 2, 0)
    return circuit_unitary(c)


@dataclass(frozen=True)
class DistillationRound:
    f_in: float
    f_out: float
    success_probability: float
    kept: Optional[bool] = None

    def to_dict(self):
        return {"F_in": self.f_in, "F_out": self.f_out, "success_probability": self.success_probability,
                "kept": self.kept}


def simulate_round(F: float, rng=None) -> DistillationRound:
    """Run one round on the 16-dimensional density matrix of two Werner pairs.

    The final randomization is the exact Werner twirl, which keeps the singlet fidelity.
    When rng is given, one target measurement is also sampled to decide whether this run kept its pair.
    """
    _check_purifying(F)
    pair = werner(F).rho.entries
    u = _round_unitary()
    rho = u @ np.kron(pair, pair) @ u.conj().T

    agree = np.array([1.0 if (i & 3) in (0, 3) else 0.0 for i in range(16)])
    kept_block = agree[:, None] * rho * agree[None, :]
    p_success = float(np.trace(kept_block).real)
    source = partial_trace(kept_block / p_success, [2, 2, 2, 2], [0, 1]).entries

    y = np.kron(standard_gate("Y").matrix, np.eye(2))
    source = y @ source @ y.conj().T
    f_out = werner_twirl(source).F

    kept = None
    if rng is not None:
        probs = np.clip(np.diag(rho).real, 0.0, None)
        outcome = make_rng(rng).choice(16, p=probs / probs.sum())
        kept = bool(agree[outcome])
    logging.debug(f"distillation round F={F:.6f} -> {f_out:.6f}, p_success={p_success:.6f}")
    return DistillationRound(float(F), f_out, p_success, kept)


def bbpssw_round(F_in: float, mode: str = "analytic", rng=None) -> DistillationRound:
    if mode == "analytic":
        _check_purifying(F_in)
        return DistillationRound(float(F_in), float(bbpssw_map(float(F_in))), bbpssw_success(F_in))
    if mode == "simulate":
        result = simulate_round(float(F_in), rng)
        expected = float(bbpssw_map(float(F_in)))
        if abs(result.f_out - expected) > ATOL_ALGEBRA:
            logging.warning(f"simulated round F'={result.f_out} drifts from the closed form {expected}")
        return result
    raise DomainError(f"unknown distillation mode {mode!r}; use 'analytic' or 'simulate'")


def distillation_trajectory(F0: float, rounds: int, pairs: int, mode: str = "analytic", rng=None) -> List[dict]:
    """Rows (round, F, success_rate, pairs_remaining), starting with round 0.

    Each round pairs up the supply and keeps the successful sources. Without rng the
    expected count is floored; with rng the survivors are drawn binomially.
    """
    rng = make_rng(rng) if rng is not None else None
    rows = [{"round": 0, "F": float(F0), "success_rate": 1.0, "pairs_remaining": int(pairs)}]
    F, remaining = float(F0), int(pairs)
    for k in range(1, rounds + 1):
        if remaining < 2:
            logging.info(f"distillation stopped after {k - 1} rounds: {remaining} pair(s) left")
            break
        step = bbpssw_round(F, mode)
        attempts = remaining // 2
        if rng is None:
            remaining = int(np.floor(attempts * step.success_probability))
        else:
            remaining = int(rng.generator.binomial(attempts, step.success_probability))
        F = step.f_out
        rows.append({"round": k, "F": F, "success_rate": step.success_probability, "pairs_remaining": remaining})
    return rows


def rounds_to_reach(F0: float, target: float, max_rounds: int = 1000) -> int:
    """Number of successful rounds needed for the fidelity to reach target."""
    if not 0.5 < target <= 1:
        raise DomainError(f"target fidelity must lie in (1/2, 1], got {target}")
    if F0 >= target:
        return 0
    _check_purifying(F0)
    F = float(F0)
    for k in range(max_rounds + 1):
        if F >= target:
            return k
        F = float(bbpssw_map(F))
    raise DomainError(f"fidelity {F0} did not reach {target} within {max_rounds} rounds")
