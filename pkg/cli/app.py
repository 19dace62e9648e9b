import logging
from enum import Enum
from pathlib import Path
from typing import List, Optional

import click
import typer
import yaml
from pydantic import ValidationError
from rich.console import Console
from rich.table import Table

from cli.experiments import Experiment, execute
from cli.models import ExperimentConfig, flag_name
from cli.output import emit
from config import DEFAULT_SEED, runtime_config, setup_logging
from core.errors import QsimError
from utils import MemoryManager

app = typer.Typer(name="qsim", help="Desk simulations of quantum information protocols, codes and devices.",
                  add_completion=False, no_args_is_help=True, pretty_exceptions_enable=False)
err_console = Console(stderr=True)


class OutputFormat(str, Enum):
    json = "json"
    csv = "csv"


class BackendChoice(str, Enum):
    statevector = "statevector"
    analytic = "analytic"


class Globals:
    def __init__(self, seed=None, out=None, fmt=None, verbose=False):
        self.seed = seed
        self.out = out
        self.fmt = fmt
        self.verbose = verbose


def _seed_option():
    return typer.Option(None, "--seed", help="Seed of the random source; equal seeds give identical output.")


def _out_option():
    return typer.Option(None, "--out", help="Write the result to this file instead of stdout.")


def _format_option():
    return typer.Option(None, "--format", help="Output format.", case_sensitive=False)


@app.callback()
def main_callback(ctx: typer.Context,
                  seed: Optional[int] = _seed_option(),
                  out: Optional[str] = _out_option(),
                  fmt: Optional[OutputFormat] = _format_option(),
                  verbose: bool = typer.Option(False, "--verbose", "-v", help="Log progress and print a summary."),
                  log_file: Optional[str] = typer.Option(None, "--log-file", help="Mirror log records to a file."),
                  jobs: Optional[int] = typer.Option(None, "--jobs", min=1, help="Worker processes for batch runs.")):
    setup_logging("INFO" if verbose else "WARNING", log_file)
    runtime_config.update_output_settings(show_progress=verbose, log_level="INFO" if verbose else "WARNING")
    runtime_config.update_simulation_settings(n_jobs=jobs or 1)
    ctx.obj = Globals(seed, out, fmt.value if fmt else None, verbose)


def _summarize(experiment: Experiment, subcommand: str):
    result = experiment.payload.get("result", {})
    table = Table(title=subcommand, show_header=True)
    table.add_column("field")
    table.add_column("value")
    for key, value in result.items():
        if value is None or isinstance(value, (bool, int, float, str)):
            table.add_row(key, str(value))
    table.caption = f"{len(experiment.rows)} table row(s)"
    err_console.print(table)


def _run(ctx: typer.Context, subcommand: str, seed=None, out=None, fmt=None, **parameters) -> Experiment:
    g: Globals = ctx.obj or Globals()
    chosen = seed if seed is not None else g.seed
    config = ExperimentConfig(
        subcommand=subcommand,
        parameters={k: (v.value if isinstance(v, Enum) else v) for k, v in parameters.items() if v is not None},
        seed=DEFAULT_SEED if chosen is None else chosen,
        out=out or g.out,
        format=(fmt.value if fmt else None) or g.fmt or "json",
    )
    return _dispatch(config, g.verbose)


def _dispatch(config: ExperimentConfig, verbose: bool) -> Experiment:
    logging.info(f"running {config.subcommand} with seed {config.seed}")
    experiment = execute(config)
    emit(experiment, config.format, config.out)
    if verbose:
        _summarize(experiment, config.subcommand)
        MemoryManager.log_memory_usage(config.subcommand)
    return experiment


@app.command("run")
def run_config(ctx: typer.Context, config_file: Path = typer.Argument(..., exists=True, dir_okay=False,
                                                                      help="YAML experiment description.")):
    """Run an experiment described by a YAML file with keys subcommand, parameters, seed, out and format."""
    with open(config_file, "r", encoding="utf-8") as fh:
        data = yaml.safe_load(fh) or {}
    g: Globals = ctx.obj or Globals()
    overrides = {"seed": g.seed, "out": g.out, "format": g.fmt}
    data.update({k: v for k, v in overrides.items() if v is not None})
    _dispatch(ExperimentConfig.model_validate(data), g.verbose)


@app.command()
def shor(ctx: typer.Context,
         n: int = typer.Option(15, "--n", help="Odd composite to factor."),
         a: Optional[int] = typer.Option(None, "--a", help="Fixed base; random bases are tried when omitted."),
         backend: Optional[BackendChoice] = typer.Option(None, "--backend", help="Order-finding backend."),
         shots: int = typer.Option(0, "--shots", help="Also sample this many q-register readouts (needs --a)."),
         seed: Optional[int] = _seed_option(), out: Optional[str] = _out_option(),
         fmt: Optional[OutputFormat] = _format_option()):
    """Shor Algorithm. Factoring: order finding by the Fourier transform, continued fractions, gcd."""
    _run(ctx, "shor", seed, out, fmt, n=n, a=a, backend=backend, shots=shots)


@app.command()
def grover(ctx: typer.Context,
           qubits: int = typer.Option(2, "--qubits", help="Register size; N = 2^qubits."),
           marked: int = typer.Option(0, "--marked", help="Index of the marked item."),
           m: Optional[int] = typer.Option(None, "--m", help="Iterations; the optimal count when omitted."),
           phi_beta: float = typer.Option(0.0, "--phi-beta", help="Phase on unmarked items (radians)."),
           phi_delta: float = typer.Option(0.0, "--phi-delta", help="Phase of the inversion about the mean."),
           curve: int = typer.Option(0, "--curve", help="Tabulate success up to this many iterations."),
           seed: Optional[int] = _seed_option(), out: Optional[str] = _out_option(),
           fmt: Optional[OutputFormat] = _format_option()):
    """Grover Algorithm. Search: amplitude amplification and its two-dimensional reduced kernel."""
    _run(ctx, "grover", seed, out, fmt, qubits=qubits, marked=marked, m=m, phi_beta=phi_beta, phi_delta=phi_delta,
         curve=curve)


@app.command()
def simon(ctx: typer.Context,
          bits: int = typer.Option(3, "--bits", help="Input width n."),
          period: int = typer.Option(5, "--period", help="Hidden period as an integer."),
          seed: Optional[int] = _seed_option(), out: Optional[str] = _out_option(),
          fmt: Optional[OutputFormat] = _format_option()):
    """Simon Algorithm. Hidden xor-period from linear equations over F2."""
    _run(ctx, "simon", seed, out, fmt, bits=bits, period=period)


@app.command()
def dj(ctx: typer.Context,
       bits: int = typer.Option(3, "--bits", help="Input width n."),
       oracle: str = typer.Option("balanced", "--oracle", help="constant0, constant1, balanced or parity."),
       mask: int = typer.Option(1, "--mask", help="Parity mask for --oracle parity."),
       classical_checks: int = typer.Option(0, "--classical-checks", help="Also run the M-sample classical test."),
       seed: Optional[int] = _seed_option(), out: Optional[str] = _out_option(),
       fmt: Optional[OutputFormat] = _format_option()):
    """Deutsch-Jozsa Algorithm. Constant or balanced with one oracle query."""
    _run(ctx, "dj", seed, out, fmt, bits=bits, oracle=oracle, mask=mask, classical_checks=classical_checks)


@app.command()
def teleport(ctx: typer.Context,
             theta: float = typer.Option(1.0, "--theta", help="Polar angle of the teleported qubit."),
             phi: float = typer.Option(0.5, "--phi", help="Azimuth of the teleported qubit."),
             branch: Optional[str] = typer.Option(None, "--branch", help="Force Alice's two measurement bits."),
             seed: Optional[int] = _seed_option(), out: Optional[str] = _out_option(),
             fmt: Optional[OutputFormat] = _format_option()):
    """Quantum Teleportation. One ebit and two classical bits move a qubit."""
    _run(ctx, "teleport", seed, out, fmt, theta=theta, phi=phi, branch=branch)


@app.command()
def dense(ctx: typer.Context,
          message: Optional[str] = typer.Option(None, "--message", help="Two bits; all four when omitted."),
          seed: Optional[int] = _seed_option(), out: Optional[str] = _out_option(),
          fmt: Optional[OutputFormat] = _format_option()):
    """Dense Coding. Two classical bits in one qubit of a shared Bell pair."""
    _run(ctx, "dense", seed, out, fmt, message=message)


@app.command()
def bb84(ctx: typer.Context,
         n: int = typer.Option(1000, "--n", help="Photons sent."),
         eve: bool = typer.Option(False, "--eve", help="Intercept-resend eavesdropper on every photon."),
         loss: float = typer.Option(0.0, "--loss", help="Probability that Bob misses a photon."),
         sessions: int = typer.Option(1, "--sessions", help="Independent sessions on derived seeds."),
         check_bits: int = typer.Option(72, "--check-bits", help="Sifted bits compared to detect Eve."),
         seed: Optional[int] = _seed_option(), out: Optional[str] = _out_option(),
         fmt: Optional[OutputFormat] = _format_option()):
    """Quantum Cryptography, QKD. BB84: sifting, QBER and eavesdropper detection."""
    _run(ctx, "bb84", seed, out, fmt, n=n, eve=eve, loss=loss, sessions=sessions, check_bits=check_bits)


@app.command()
def bbm92(ctx: typer.Context,
          n: int = typer.Option(1000, "--n", help="Singlet pairs distributed."),
          seed: Optional[int] = _seed_option(), out: Optional[str] = _out_option(),
          fmt: Optional[OutputFormat] = _format_option()):
    """Quantum Cryptography, EPR Protocols. Key distribution from shared singlets."""
    _run(ctx, "bbm92", seed, out, fmt, n=n)


@app.command()
def distill(ctx: typer.Context,
            f0: float = typer.Option(0.75, "--f0", help="Starting Werner fidelity, above 1/2."),
            rounds: int = typer.Option(5, "--rounds", help="Purification rounds."),
            pairs: int = typer.Option(1024, "--pairs", help="Pairs available before the first round."),
            mode: str = typer.Option("analytic", "--mode", help="analytic or simulate."),
            seed: Optional[int] = _seed_option(), out: Optional[str] = _out_option(),
            fmt: Optional[OutputFormat] = _format_option()):
    """Entanglement Distillation. Purifying Werner pairs: fidelity and yield per round."""
    _run(ctx, "distill", seed, out, fmt, f0=f0, rounds=rounds, pairs=pairs, mode=mode)


@app.command()
def steane(ctx: typer.Context,
           error: Optional[str] = typer.Option(None, "--error", help="Seven-letter Pauli string; all 21 single errors when omitted."),
           theta: Optional[float] = typer.Option(None, "--theta", help="Logical qubit polar angle; random when omitted."),
           phi: float = typer.Option(0.0, "--phi", help="Logical qubit azimuth."),
           seed: Optional[int] = _seed_option(), out: Optional[str] = _out_option(),
           fmt: Optional[OutputFormat] = _format_option()):
    """Quantum Error Correction. Steane seven-qubit CSS code: syndrome extraction and correction."""
    _run(ctx, "steane", seed, out, fmt, error=error, theta=theta, phi=phi)


@app.command()
def hamming(ctx: typer.Context,
            word: str = typer.Option("0110001", "--word", help="Received seven-bit word."),
            seed: Optional[int] = _seed_option(), out: Optional[str] = _out_option(),
            fmt: Optional[OutputFormat] = _format_option()):
    """Classical Error Correction. Hamming [7,4] code: syndrome decoding of a received word."""
    _run(ctx, "hamming", seed, out, fmt, word=word)


@app.command()
def bounds(ctx: typer.Context,
           q: int = typer.Option(2, "--q", help="Alphabet size."),
           points: int = typer.Option(11, "--points", help="Grid points over the relative distance."),
           t: Optional[int] = typer.Option(None, "--t", help="Correctable qubit errors, with --n."),
           n: Optional[int] = typer.Option(None, "--n", help="Code length in qubits, with --t."),
           seed: Optional[int] = _seed_option(), out: Optional[str] = _out_option(),
           fmt: Optional[OutputFormat] = _format_option()):
    """Asymptotic bounds for linear codes. Plotkin, Hamming, Elias and Gilbert-Varshamov rates."""
    _run(ctx, "bounds", seed, out, fmt, q=q, points=points, t=t, n=n)


@app.command()
def qft(ctx: typer.Context,
        k: int = typer.Option(3, "--k", help="Register size in qudits."),
        d: int = typer.Option(2, "--d", help="Local dimension."),
        seed: Optional[int] = _seed_option(), out: Optional[str] = _out_option(),
        fmt: Optional[OutputFormat] = _format_option()):
    """The Quantum Fourier Transform. The Hadamard and controlled-phase circuit against the DFT matrix."""
    _run(ctx, "qft", seed, out, fmt, k=k, d=d)


@app.command()
def synth(ctx: typer.Context,
          controls: int = typer.Option(2, "--controls", help="Number of control qubits."),
          samples: int = typer.Option(1, "--samples", help="Random target unitaries to synthesize."),
          seed: Optional[int] = _seed_option(), out: Optional[str] = _out_option(),
          fmt: Optional[OutputFormat] = _format_option()):
    """Quantum Logic Gates and Quantum Circuits. Multiply-controlled U from one-qubit gates and CNOTs."""
    _run(ctx, "synth", seed, out, fmt, controls=controls, samples=samples)


@app.command()
def rabi(ctx: typer.Context,
         omega0: float = typer.Option(10.0, "--omega0", help="Larmor frequency (rad/s)."),
         omega1: float = typer.Option(1.0, "--omega1", help="Drive strength (rad/s)."),
         omega: Optional[float] = typer.Option(None, "--omega", help="Drive frequency; resonant when omitted."),
         t_max: float = typer.Option(6.283185307179586, "--t-max", help="End of the time grid."),
         points: int = typer.Option(9, "--points", help="Time grid points."),
         alpha: float = typer.Option(0.3, "--alpha", help="Outer z angle of the rotation recipe."),
         beta: float = typer.Option(1.1, "--beta", help="y angle of the rotation recipe."),
         gamma: float = typer.Option(-0.4, "--gamma", help="Inner z angle of the rotation recipe."),
         seed: Optional[int] = _seed_option(), out: Optional[str] = _out_option(),
         fmt: Optional[OutputFormat] = _format_option()):
    """One- and Two-Qubit Logic Gates with Spin Qubits. Rabi oscillations and pulse rotations."""
    _run(ctx, "rabi", seed, out, fmt, omega0=omega0, omega1=omega1, omega=omega, t_max=t_max, points=points,
         alpha=alpha, beta=beta, gamma=gamma)


@app.command()
def iontrap(ctx: typer.Context,
            control: int = typer.Option(0, "--control", help="Control ion."),
            target: int = typer.Option(1, "--target", help="Target ion."),
            ions: int = typer.Option(2, "--ions", help="Ions in the chain."),
            seed: Optional[int] = _seed_option(), out: Optional[str] = _out_option(),
            fmt: Optional[OutputFormat] = _format_option()):
    """The Ion-Trap QC. Controlled phase and CNOT from laser pulses on a shared phonon mode."""
    _run(ctx, "iontrap", seed, out, fmt, control=control, target=target, ions=ions)


@app.command()
def nmr(ctx: typer.Context,
        sequence: str = typer.Option("prepare", "--sequence", help="prepare, bell, cnot or ising."),
        omega1: float = typer.Option(-11.0, "--omega1", help="Spin 1 frequency for --sequence ising."),
        omega2: float = typer.Option(-6.0, "--omega2", help="Spin 2 frequency for --sequence ising."),
        coupling: float = typer.Option(2.0, "--coupling", help="Ising coupling J for --sequence ising."),
        seed: Optional[int] = _seed_option(), out: Optional[str] = _out_option(),
        fmt: Optional[OutputFormat] = _format_option()):
    """NMR Liquids: Quantum Ensemble Computation. Product-operator pulse sequences and the Ising spin pair."""
    _run(ctx, "nmr", seed, out, fmt, sequence=sequence, omega1=omega1, omega2=omega2, coupling=coupling)


@app.command()
def kane(ctx: typer.Context,
         b: float = typer.Option(2.0, "--b", help="Static field in Tesla."),
         j: float = typer.Option(30e9, "--j", help="Exchange energy J/h in Hz."),
         a: Optional[float] = typer.Option(None, "--a", help="Hyperfine energy A/h in Hz; phosphorus when omitted."),
         schedule_steps: int = typer.Option(0, "--schedule-steps", help="Check level continuity along a J ramp."),
         seed: Optional[int] = _seed_option(), out: Optional[str] = _out_option(),
         fmt: Optional[OutputFormat] = _format_option()):
    """Solid-State Quantum Computers. Silicon donor qubits: hyperfine and exchange splittings."""
    _run(ctx, "kane", seed, out, fmt, b=b, j=j, a=a, schedule_steps=schedule_steps)


@app.command()
def tm(ctx: typer.Context,
       machine: str = typer.Option("beaver3", "--machine", help="example, adder, beaver3 or a machine JSON file."),
       tape: str = typer.Option("", "--tape", help="Initial tape cells from the head rightwards, e.g. 1101."),
       max_steps: int = typer.Option(10_000, "--max-steps", help="Stop after this many steps."),
       head: int = typer.Option(0, "--head", help="Starting head position."),
       seed: Optional[int] = _seed_option(), out: Optional[str] = _out_option(),
       fmt: Optional[OutputFormat] = _format_option()):
    """The Turing Machine. Run an instruction table on a tape."""
    _run(ctx, "tm", seed, out, fmt, machine=machine, tape=tape, max_steps=max_steps, head=head)


@app.command()
def beaver(ctx: typer.Context,
           states: int = typer.Option(2, "--states", help="Number of states S."),
           step_cap: Optional[int] = typer.Option(None, "--step-cap", help="Steps after which a machine counts as non-halting."),
           allow_long: bool = typer.Option(False, "--allow-long", help="Permit the long three-state search."),
           seed: Optional[int] = _seed_option(), out: Optional[str] = _out_option(),
           fmt: Optional[OutputFormat] = _format_option()):
    """The Turing Machine. Busy beaver: exhaustive search for Sigma(S) and Sigma'(S)."""
    _run(ctx, "beaver", seed, out, fmt, states=states, step_cap=step_cap, allow_long=allow_long)


@app.command()
def rsa(ctx: typer.Context,
        p1: int = typer.Option(11, "--p1", help="First prime."),
        p2: int = typer.Option(13, "--p2", help="Second prime."),
        d: int = typer.Option(7, "--d", help="Private exponent, coprime to phi(N)."),
        message: str = typer.Option("qc", "--message", help="Lower-case letters and blanks."),
        backend: Optional[BackendChoice] = typer.Option(None, "--backend", help="Order-finding backend for the attack."),
        seed: Optional[int] = _seed_option(), out: Optional[str] = _out_option(),
        fmt: Optional[OutputFormat] = _format_option()):
    """Classical Cryptography, RSA System. Keys, encryption and breaking the key by factoring."""
    _run(ctx, "rsa", seed, out, fmt, p1=p1, p2=p2, d=d, message=message, backend=backend)


def run_cli(argv: Optional[List[str]] = None) -> int:
    """Run the command line and map failures to exit codes: 1 for domain errors, 2 for usage errors."""
    try:
        app(args=argv, prog_name="qsim", standalone_mode=False)
    except click.UsageError as exc:
        exc.show()
        return 2
    except ValidationError as exc:
        for error in exc.errors():
            where = f"{flag_name(error['loc'])}: " if error["loc"] else ""
            err_console.print(f"[red]usage error[/red] {where}{error['msg'].removeprefix('Value error, ')}")
        return 2
    except QsimError as exc:
        logging.error(f"{type(exc).__name__}: {exc}")
        err_console.print(f"[red]error[/red] {type(exc).__name__}: {exc}")
        return 1
    except click.ClickException as exc:
        exc.show()
        return exc.exit_code
    except click.Abort:
        err_console.print("aborted")
        return 1
    except Exception:
        logging.error("unexpected failure", exc_info=True)
        return 1
    return 0
