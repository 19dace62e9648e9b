"""Spin-1/2 in a static field B0 along z plus a field B1 rotating at frequency omega in the xy plane.

omega0 = -gamma B0 and omega1 = -gamma B1 are the Larmor and nutation frequencies. The lab-frame
propagator from t = 0 factorizes as exp(-i omega t sz/2) exp(-i [(omega0 - omega) sz + omega1 sx] t/2).
"""
import logging
from dataclasses import dataclass
from typing import List, Sequence

import numpy as np
from scipy.linalg import expm

from core.errors import DomainError
from gates.library import IDENTITY, SIGMA_X, SIGMA_Z

FULL_TURN = 4 * np.pi  # spin-1/2 rotations repeat after 4 pi


@dataclass(frozen=True)
class RabiField:
    omega0: float
    omega1: float
    omega: float

    def __post_init__(self):
        if not all(np.isfinite([self.omega0, self.omega1, self.omega])):
            raise DomainError("field frequencies must be finite")

    @property
    def detuning(self) -> float:
        return self.omega0 - self.omega

    @property
    def Omega(self) -> float:
        return float(np.hypot(self.detuning, self.omega1))

    @property
    def on_resonance(self) -> bool:
        return self.omega == self.omega0

    @classmethod
    def resonant(cls, omega0: float, omega1: float) -> "RabiField":
        return cls(omega0, omega1, omega0)

    def with_drive(self, omega1: float) -> "RabiField":
        return RabiField(self.omega0, omega1, self.omega)


def _check_time(t: float):
    if t < 0 or not np.isfinite(t):
        raise DomainError(f"evolution time must be finite and >= 0, got {t}")


def rabi_propagator(f: RabiField, t: float) -> np.ndarray:
    _check_time(t)
    frame = expm(-0.5j * f.omega * t * SIGMA_Z)
    rotating = expm(-0.5j * t * (f.detuning * SIGMA_Z + f.omega1 * SIGMA_X))
    return frame @ rotating


def spin_flip_prob(f: RabiField, t: float) -> float:
    """|<1|U(t)|0>|^2 = (omega1/Omega)^2 sin^2(Omega t/2)."""
    return float(abs(rabi_propagator(f, t)[1, 0]) ** 2)


def max_flip_prob(f: RabiField) -> float:
    if f.Omega == 0:
        return 0.0
    return (f.omega1 / f.Omega) ** 2


def interaction_picture_propagator(f: RabiField, t: float) -> np.ndarray:
    """U0(t)^dagger U(t) with U0 the free precession; at resonance this is exp(-i omega1 t sx/2)."""
    u0 = expm(-0.5j * f.omega0 * t * SIGMA_Z)
    return u0.conj().T @ rabi_propagator(f, t)


def pi_pulse_time(f: RabiField) -> float:
    if f.Omega == 0:
        raise DomainError("no nutation without a transverse field")
    return float(np.pi / f.Omega)


def rabi_trace(f: RabiField, times: Sequence[float]) -> List[dict]:
    return [{"t": float(t), "flip_probability": spin_flip_prob(f, t)} for t in times]


@dataclass(frozen=True)
class RabiPulse:
    """A resonant drive (B1 on) or free precession (B1 off) of a given duration."""
    kind: str
    duration: float
    angle: float

    def to_dict(self):
        return {"kind": self.kind, "duration": self.duration, "angle": self.angle}


def _duration(angle: float, rate: float) -> float:
    if rate == 0:
        raise DomainError("cannot rotate with a zero frequency")
    a = float(np.mod(angle, FULL_TURN))
    if a == 0:
        return 0.0
    return a / rate if rate > 0 else (a - FULL_TURN) / rate


def rabi_rotation_pulses(alpha: float, beta: float, gamma: float, f: RabiField) -> List[RabiPulse]:
    """Pulses, in time order, realizing Rz(alpha) Ry(beta) Rz(gamma) in the lab frame.

    Free precession for T gives Rz(omega0 T). A resonant drive for t gives Rz(omega0 t) Rx(omega1 t),
    and Ry(beta) = Rz(pi/2) Rx(beta) Rz(-pi/2), so the drive is bracketed by two free periods.
    """
    if not f.on_resonance:
        raise DomainError("rotation recipes need the drive on resonance")
    drive = _duration(beta, f.omega1)
    pulses = [
        RabiPulse("free", _duration(gamma - np.pi / 2, f.omega0), gamma - np.pi / 2),
        RabiPulse("drive", drive, beta),
        RabiPulse("free", _duration(alpha + np.pi / 2 - f.omega0 * drive, f.omega0),
                  alpha + np.pi / 2 - f.omega0 * drive),
    ]
    logging.debug(f"rotation recipe durations {[p.duration for p in pulses]}")
    return [p for p in pulses if p.duration > 0]


def pulse_program_unitary(pulses: Sequence[RabiPulse], f: RabiField) -> np.ndarray:
    u = IDENTITY.copy()
    for p in pulses:
        if p.kind == "free":
            step = rabi_propagator(f.with_drive(0.0), p.duration)
        elif p.kind == "drive":
            step = rabi_propagator(f, p.duration)
        else:
            raise DomainError(f"unknown pulse kind {p.kind!r}")
        u = step @ u
    return u
