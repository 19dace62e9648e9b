"""Energy levels of phosphorus donors in silicon with hyperfine (A) and exchange (J) gates.

Energies are frequencies E/h in Hz, magnetic moments are in Hz/T and fields in Tesla.
"""
import logging
from dataclasses import dataclass, replace
from typing import Dict, List, Optional

import numpy as np
from scipy import constants

from config import ATOL_ALGEBRA
from core.errors import DomainError

BOHR_MAGNETON_HZ = constants.physical_constants["Bohr magneton in Hz/T"][0]
NUCLEAR_MAGNETON_HZ = constants.physical_constants["nuclear magneton in MHz/T"][0] * 1e6

SI_DIELECTRIC = 11.7
DONOR_BOHR_RADIUS = 30 * constants.angstrom
P_HYPERFINE_HZ = 116e6
P_NUCLEAR_G = 2 * 1.13

PERTURBATIVE_RATIO = 0.1  # A / |gamma_e B| above which the second-order formulas are refused


@dataclass(frozen=True)
class KaneParams:
    A: float
    J: float
    B: float
    gamma_e_bar: float = -2 * BOHR_MAGNETON_HZ
    gamma_n_bar: float = P_NUCLEAR_G * NUCLEAR_MAGNETON_HZ
    A1: Optional[float] = None
    A2: Optional[float] = None

    def __post_init__(self):
        if not all(np.isfinite([self.A, self.J, self.B, self.gamma_e_bar, self.gamma_n_bar])):
            raise DomainError("Kane parameters must be finite")
        if self.B <= 0:
            raise DomainError(f"static field must be positive, got {self.B} T")

    @classmethod
    def phosphorus(cls, B: float = 2.0, J: float = 30e9) -> "KaneParams":
        return cls(A=P_HYPERFINE_HZ, J=J, B=B)

    @property
    def electron_zeeman(self) -> float:
        return abs(self.gamma_e_bar) * self.B

    def with_J(self, J: float) -> "KaneParams":
        return replace(self, J=J)


def _lint(params: KaneParams, need_weak_exchange: bool = False):
    ratio = abs(params.A) / params.electron_zeeman
    if ratio > PERTURBATIVE_RATIO:
        raise DomainError(f"A / |gamma_e B| = {ratio:.3g} is too large for the perturbative formula")
    if need_weak_exchange and not params.J < params.electron_zeeman:
        raise DomainError(f"perturbative exchange splitting needs J < |gamma_e| B = {params.electron_zeeman:.4g} Hz")


def kane_splitting(params: KaneParams) -> float:
    """Nuclear level separation gamma_n B + A/2 - A^2 / (4 gamma_e B), second order in A."""
    _lint(params)
    B = params.B
    return params.gamma_n_bar * B + params.A / 2 - params.A ** 2 / (4 * params.gamma_e_bar * B)


def kane_exchange(r: float, epsilon: float = SI_DIELECTRIC, a_B: float = DONOR_BOHR_RADIUS) -> float:
    """Exchange J(r) ~ 1.6 e^2/(4 pi eps0 epsilon a_B) (r/a_B)^(5/2) exp(-2 r/a_B), in Hz; r in metres."""
    if r <= 0:
        raise DomainError(f"donor separation must be positive, got {r}")
    scale = 1.6 * constants.e ** 2 / (4 * np.pi * constants.epsilon_0 * epsilon * a_B)
    return float(scale * (r / a_B) ** 2.5 * np.exp(-2 * r / a_B) / constants.h)


def sector_hamiltonian(params: KaneParams) -> np.ndarray:
    """Total S^z = -1 block on {|01>|dd>, |10>|dd>, |11>|du>, |11>|ud>}."""
    A, J, B = params.A, params.J, params.B
    e, n = params.gamma_e_bar * B, params.gamma_n_bar * B
    return np.array([
        [J / 4 + e, 0, 0, A / 2],
        [0, J / 4 + e, A / 2, 0],
        [0, A / 2, -J / 4 + n, J / 2],
        [A / 2, 0, J / 2, -J / 4 + n],
    ])


def kane_sector_levels(params: KaneParams) -> np.ndarray:
    return np.linalg.eigvalsh(sector_hamiltonian(params))


def symmetric_levels(params: KaneParams) -> Dict[str, float]:
    """Closed forms E_{s,+-} and E_{a,+-} for equal hyperfine couplings."""
    A, J, B = params.A, params.J, params.B
    ge, gn = params.gamma_e_bar, params.gamma_n_bar
    mean = 0.5 * (ge + gn) * B
    rs = 0.5 * np.sqrt(((gn - ge) * B) ** 2 + A ** 2)
    ra = 0.5 * np.sqrt(((gn - ge) * B - J) ** 2 + A ** 2)
    return {"s+": mean + J / 4 + rs, "s-": mean + J / 4 - rs, "a+": mean - J / 4 + ra, "a-": mean - J / 4 - ra}


def kane_exact_omega_J(params: KaneParams) -> float:
    levels = symmetric_levels(params)
    return float(levels["s-"] - levels["a-"])


def kane_omega_J(params: KaneParams) -> float:
    """(A^2/4) (1/(|gamma_e| B - J) - 1/(|gamma_e| B)), the symmetric/antisymmetric nuclear splitting."""
    _lint(params, need_weak_exchange=True)
    g = params.electron_zeeman
    return params.A ** 2 / 4 * (1 / (g - params.J) - 1 / g)


def kane_energy_11(params: KaneParams) -> float:
    """|11>_n|dd>_e, alone in the total S^z = -2 sector."""
    return (params.gamma_e_bar + params.gamma_n_bar) * params.B + params.J / 4 + params.A / 2


def kane_omega_ac(params: KaneParams) -> float:
    """Gap between |s>_n|dd>_e and |11>_n|dd>_e that the CNOT Rabi pulse is tuned to."""
    return float(abs(kane_energy_11(params) - symmetric_levels(params)["s-"]))


def kane_two_qubit_levels(params: KaneParams, A1: Optional[float] = None, A2: Optional[float] = None) -> Dict[str, float]:
    """Nuclear levels with both electrons down, J off and the hyperfine gates biased to A1, A2."""
    A1 = A1 if A1 is not None else (params.A if params.A1 is None else params.A1)
    A2 = A2 if A2 is not None else (params.A if params.A2 is None else params.A2)
    ge, gn, B = params.gamma_e_bar, params.gamma_n_bar, params.B
    dA = A1 - A2
    r1 = np.sqrt(((gn - ge) * B) ** 2 + A1 ** 2)
    r2 = np.sqrt(((gn - ge) * B) ** 2 + A2 ** 2)
    return {
        "00": float(-0.5 * (r1 + r2) - (A1 + A2) / 4),
        "01": float(-dA / 4 + 0.5 * ((ge + gn) * B - r1)),
        "10": float(dA / 4 + 0.5 * ((ge + gn) * B - r2)),
        "11": float((ge - gn) * B + (A1 + A2) / 4),
    }


def kane_crossover_field(params: KaneParams) -> float:
    """Field below which A/2 exceeds gamma_n B."""
    return params.A / (2 * params.gamma_n_bar)


@dataclass
class ScheduleCheck:
    rows: List[dict]
    max_step: float
    max_closed_form_error: float
    continuous: bool

    def to_dict(self):
        return {"steps": len(self.rows), "max_step": self.max_step,
                "max_closed_form_error": self.max_closed_form_error, "continuous": self.continuous}


def kane_cnot_schedule_check(params: KaneParams, J_max: Optional[float] = None, steps: int = 200) -> ScheduleCheck:
    """Ramp J from 0 to J_max and follow the exact S^z = -1 levels.

    A ramp step dJ moves each sorted level by at most 3/4 |dJ|; the levels must also agree with
    the symmetric and antisymmetric closed forms.
    """
    if steps < 2:
        raise DomainError("a schedule needs at least two points")
    J_max = 2 * params.electron_zeeman if J_max is None else J_max
    rows, previous = [], None
    max_step, max_err = 0.0, 0.0
    for J in np.linspace(0.0, J_max, steps):
        p = params.with_J(float(J))
        levels = kane_sector_levels(p)
        closed = np.sort(list(symmetric_levels(p).values()))
        max_err = max(max_err, float(np.abs(levels - closed).max()))
        if previous is not None:
            max_step = max(max_step, float(np.abs(levels - previous).max()))
        previous = levels
        row = {"J": float(J)}
        row.update({k: float(v) for k, v in symmetric_levels(p).items()})
        rows.append(row)
    dJ = J_max / (steps - 1)
    scale = max(params.electron_zeeman, 1.0)
    continuous = max_step <= 0.75 * abs(dJ) + ATOL_ALGEBRA * scale and max_err <= 1e-9 * scale
    logging.info(f"Kane J ramp to {J_max:.4g} Hz: max level step {max_step:.4g}, closed-form error {max_err:.3g}")
    return ScheduleCheck(rows, max_step, max_err, bool(continuous))
