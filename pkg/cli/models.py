"""Validated experiment configuration: one parameter model per subcommand."""
from typing import Dict, Literal, Optional, Type

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from config import DEFAULT_SEED

OutputFormat = Literal["json", "csv"]


class Parameters(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)


class ShorParameters(Parameters):
    n: int = Field(15, ge=3)
    a: Optional[int] = Field(None, ge=2)
    backend: Optional[Literal["statevector", "analytic"]] = None
    shots: int = Field(0, ge=0)


class GroverParameters(Parameters):
    qubits: int = Field(2, ge=1, le=14)
    marked: int = Field(0, ge=0)
    m: Optional[int] = Field(None, ge=0)
    phi_beta: float = 0.0
    phi_delta: float = 0.0
    curve: int = Field(0, ge=0)


class SimonParameters(Parameters):
    bits: int = Field(3, ge=2, le=7)
    period: int = Field(5, ge=1)


class DeutschJozsaParameters(Parameters):
    bits: int = Field(3, ge=1, le=10)
    oracle: Literal["constant0", "constant1", "balanced", "parity"] = "balanced"
    mask: int = Field(1, ge=1)
    classical_checks: int = Field(0, ge=0)


class TeleportParameters(Parameters):
    theta: float = 1.0
    phi: float = 0.5
    branch: Optional[Literal["00", "01", "10", "11"]] = None


class DenseParameters(Parameters):
    message: Optional[Literal["00", "01", "10", "11"]] = None


class Bb84Parameters(Parameters):
    n: int = Field(1000, ge=1)
    eve: bool = False
    loss: float = Field(0.0, ge=0.0, lt=1.0)
    sessions: int = Field(1, ge=1)
    check_bits: int = Field(72, ge=1)


class Bbm92Parameters(Parameters):
    n: int = Field(1000, ge=1)


class DistillParameters(Parameters):
    f0: float = Field(0.75, gt=0.5, le=1.0)
    rounds: int = Field(5, ge=0)
    pairs: int = Field(1024, ge=1)
    mode: Literal["analytic", "simulate"] = "analytic"


class SteaneParameters(Parameters):
    error: Optional[str] = Field(None, pattern=r"^[IXYZixyz]{7}$")
    theta: Optional[float] = None
    phi: float = 0.0


class HammingParameters(Parameters):
    word: str = Field("0110001", pattern=r"^[01]{7}$")


class BoundsParameters(Parameters):
    q: int = Field(2, ge=2)
    points: int = Field(11, ge=2)
    t: Optional[int] = Field(None, ge=0)
    n: Optional[int] = Field(None, ge=1)


class QftParameters(Parameters):
    k: int = Field(3, ge=1, le=8)
    d: int = Field(2, ge=2)


class SynthParameters(Parameters):
    controls: int = Field(2, ge=1, le=6)
    samples: int = Field(1, ge=1)


class RabiParameters(Parameters):
    omega0: float = 10.0
    omega1: float = 1.0
    omega: Optional[float] = None
    t_max: float = Field(6.283185307179586, gt=0.0)
    points: int = Field(9, ge=2)
    alpha: float = 0.3
    beta: float = 1.1
    gamma: float = -0.4


class IonTrapParameters(Parameters):
    control: int = Field(0, ge=0)
    target: int = Field(1, ge=0)
    ions: int = Field(2, ge=2, le=4)


class NmrParameters(Parameters):
    sequence: Literal["prepare", "bell", "cnot", "ising"] = "prepare"
    omega1: float = -11.0
    omega2: float = -6.0
    coupling: float = 2.0


class KaneParameters(Parameters):
    b: float = Field(2.0, gt=0.0)
    j: float = Field(30e9, ge=0.0)
    a: Optional[float] = None
    schedule_steps: int = Field(0, ge=0)


class TuringParameters(Parameters):
    machine: str = "beaver3"
    tape: str = ""
    max_steps: int = Field(10_000, ge=0)
    head: int = 0


class BeaverParameters(Parameters):
    states: int = Field(2, ge=1, le=3)
    step_cap: Optional[int] = Field(None, ge=1)
    allow_long: bool = False


class RsaParameters(Parameters):
    p1: int = Field(11, ge=2)
    p2: int = Field(13, ge=2)
    d: int = Field(7, ge=1)
    message: str = "qc"
    backend: Optional[Literal["statevector", "analytic"]] = None


PARAMETER_MODELS: Dict[str, Type[Parameters]] = {
    "shor": ShorParameters,
    "grover": GroverParameters,
    "simon": SimonParameters,
    "dj": DeutschJozsaParameters,
    "teleport": TeleportParameters,
    "dense": DenseParameters,
    "bb84": Bb84Parameters,
    "bbm92": Bbm92Parameters,
    "distill": DistillParameters,
    "steane": SteaneParameters,
    "hamming": HammingParameters,
    "bounds": BoundsParameters,
    "qft": QftParameters,
    "synth": SynthParameters,
    "rabi": RabiParameters,
    "iontrap": IonTrapParameters,
    "nmr": NmrParameters,
    "kane": KaneParameters,
    "tm": TuringParameters,
    "beaver": BeaverParameters,
    "rsa": RsaParameters,
}


class ExperimentConfig(BaseModel):
    """A subcommand, its parameters and the output options; unknown keys are rejected at every level."""
    model_config = ConfigDict(extra="forbid")

    subcommand: Literal[tuple(PARAMETER_MODELS)]
    parameters: Parameters = Field(default_factory=Parameters)
    seed: int = Field(DEFAULT_SEED, ge=0, lt=2 ** 64)
    out: Optional[str] = None
    format: OutputFormat = "json"

    @model_validator(mode="before")
    @classmethod
    def _typed_parameters(cls, data):
        if isinstance(data, dict):
            model = PARAMETER_MODELS.get(data.get("subcommand"))
            raw = data.get("parameters") or {}
            if model is not None and not isinstance(raw, model):
                try:
                    data = {**data, "parameters": model.model_validate(raw if isinstance(raw, dict) else dict(raw))}
                except ValidationError as exc:
                    raise ValueError("; ".join(f"{flag_name(e['loc'])}: {e['msg']}" for e in exc.errors()))
        return data


def flag_name(loc) -> str:
    """Command-line spelling of a parameter location: ('max_steps',) -> --max-steps."""
    return "--" + str(loc[-1]).replace("_", "-") if loc else "--config"
