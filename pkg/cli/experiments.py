"""One runner per subcommand: build the objects, run them, return a payload and the CSV rows."""
import logging
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Dict, List

import numpy as np
from humanfriendly import format_timespan

from algorithms import (GroverParams, ShorContext, balanced_bit_oracle, constant_oracle, deutsch_jozsa,
                        deutsch_jozsa_classical, factor, grover_optimal_m, grover_peak, grover_search,
                        grover_success_curve, parity_oracle, period_oracle, shor_histogram, simon)
from cli.models import ExperimentConfig
from codes import (bound_table, code_space_fidelity, correct, decode, hamming_734, pauli_string, quantum_bounds,
                   steane_correct, steane_encode, syndrome, word_str)
from core import MalformedMachineError, bloch_state, make_rng, overlap, random_state, random_unitary
from core.errors import DomainError
from gates import (circuit_unitary, controlled_matrix, controlled_u_cost, dft_unitary, qft_circuit, qft_gate_counts,
                   ry, rz, standard_gate, synthesize_controlled_u)
from hardware import (IsingPair, KaneParams, RabiField, cz_cnot, cz_cphase, ising_cnot,
                      ising_cnot_check, ising_levels, ising_transition_frequencies, kane_cnot_schedule_check,
                      kane_crossover_field, kane_exact_omega_J, kane_omega_ac, kane_omega_J, kane_splitting,
                      leakage, max_flip_prob, nmr_bell_sequence, nmr_cnot_sequence, nmr_prepare_pseudo_pure,
                      nmr_signal, phase_frame, pi_pulse_time, pulse_program_unitary, rabi_rotation_pulses,
                      rabi_trace, superoperator_distance, CNOT_PULSES)
from hardware.ion_trap import computational_block
from protocols import (bb84_session, bbm92_session, dense_coding, dense_encode, rsa_break, rsa_decrypt,
                       rsa_encrypt, rsa_keygen, run_sessions, split_blocks, teleport, text_to_number_string)
from protocols.teleportation import CORRECTIONS
from qinfo import distillation_trajectory
from turing import FIXTURES, TuringMachine, busy_beaver_search, run


@dataclass
class Experiment:
    payload: dict
    rows: List[dict] = field(default_factory=list)
    table: str = ""


def _phase_error(got: np.ndarray, want: np.ndarray) -> float:
    """Largest entry of got - c want, with c the unit phase that aligns the largest entry of want."""
    k = int(np.argmax(np.abs(want)))
    c = got.reshape(-1)[k] / want.reshape(-1)[k]
    c = c / abs(c) if abs(c) > 0 else 1.0
    return float(np.abs(got - c * want).max())


def run_shor(p, rng) -> Experiment:
    result = factor(p.n, rng=rng, backend=p.backend, a=p.a)
    payload = result.to_dict()
    if not p.shots:
        row = dict(payload, factors=" ".join(map(str, payload["factors"] or [])))
        return Experiment(payload, [row], "shor")
    if p.a is None:
        raise DomainError("a q-histogram needs a fixed base; pass --a")
    ctx = ShorContext(p.n, p.a)
    counts = shor_histogram(ctx, p.shots, rng)
    payload.update({"Q": ctx.Q, "shots": p.shots, "histogram": {str(q): c for q, c in sorted(counts.items())}})
    rows = [{"q": q, "count": c, "frequency": c / p.shots} for q, c in sorted(counts.items())]
    return Experiment(payload, rows, "shor_histogram")


def run_grover(p, rng) -> Experiment:
    params = GroverParams.from_phases(p.phi_beta, p.phi_delta)
    result = grover_search(p.qubits, p.marked, params, p.m, rng)
    payload = result.to_dict()
    N = 2 ** p.qubits
    m_max = p.curve or 2 * grover_optimal_m(N, params.phi) + 1
    curve = grover_success_curve(N, params, m_max)
    peak_m, peak_p = grover_peak(N, params, m_max)
    payload.update({"N": N, "peak_iteration": peak_m, "peak_probability": peak_p})
    rows = [{"m": m, "success_probability": float(s)} for m, s in enumerate(curve)]
    return Experiment(payload, rows, "grover")


def run_simon(p, rng) -> Experiment:
    result = simon(period_oracle(p.bits, p.period), rng)
    payload = dict(result.to_dict(), bits=p.bits, period_bits=format(result.period, f"0{p.bits}b"))
    row = {"bits": p.bits, "period": payload["period_bits"], "queries": result.queries,
           "samples": " ".join(format(s, f"0{p.bits}b") for s in result.samples)}
    return Experiment(payload, [row], "simon")


def _dj_oracle(p):
    if p.oracle == "constant0":
        return constant_oracle(p.bits, 0)
    if p.oracle == "constant1":
        return constant_oracle(p.bits, 1)
    if p.oracle == "parity":
        return parity_oracle(p.bits, p.mask)
    return balanced_bit_oracle(p.bits, 0)


def run_dj(p, rng) -> Experiment:
    f = _dj_oracle(p)
    payload = dict(deutsch_jozsa(f, rng).to_dict(), oracle=f.name)
    if p.classical_checks:
        classical = deutsch_jozsa_classical(f, p.classical_checks, rng)
        payload["classical"] = {"verdict": classical.verdict.value, "evaluations": classical.evaluations,
                                "error_bound": classical.error_bound}
    row = {k: payload[k] for k in ("oracle", "verdict", "outcome", "prob_all_zero", "queries")}
    return Experiment(payload, [row], "dj")


def run_teleport(p, rng) -> Experiment:
    psi = bloch_state(p.theta, p.phi)
    branches = [p.branch] if p.branch else sorted(CORRECTIONS)
    rows = []
    for branch in branches:
        bob, transcript = teleport(psi, branch=branch)
        rows.append({"branch": branch, "correction": CORRECTIONS[branch],
                     "fidelity": float(abs(overlap(psi, bob)) ** 2),
                     "bits_sent": transcript.classical_bits_sent("Alice")})
    bob, transcript = teleport(psi, rng)
    payload = {"theta": p.theta, "phi": p.phi, "branches": rows,
               "sampled": {"fidelity": float(abs(overlap(psi, bob)) ** 2), "transcript": transcript.to_lines()}}
    return Experiment(payload, rows, "teleport")


def run_dense(p, rng) -> Experiment:
    rows = []
    for message in ([p.message] if p.message else ["00", "01", "10", "11"]):
        decoded, transcript = dense_coding(message)
        rows.append({"message": message, "gate": dense_encode(message), "decoded": decoded,
                     "qubits_sent": transcript.count("send qubit")})
    return Experiment({"messages": rows}, rows, "dense")


def run_bb84(p, rng) -> Experiment:
    if p.sessions == 1:
        sessions = [bb84_session(p.n, p.eve, rng, p.loss)]
    else:
        if p.loss:
            raise DomainError("loss is only modelled for single sessions")
        sessions = run_sessions(p.n, p.sessions, p.eve, rng)
    rows = [s.to_dict(p.check_bits) for s in sessions]
    payload = rows[0] if len(rows) == 1 else {"sessions": rows,
                                             "mean_qber": float(np.mean([r["qber"] for r in rows]))}
    return Experiment(payload, rows, "qkd")


def run_bbm92(p, rng) -> Experiment:
    row = bbm92_session(p.n, rng).to_dict()
    return Experiment(row, [row], "qkd")


def run_distill(p, rng) -> Experiment:
    rows = distillation_trajectory(p.f0, p.rounds, p.pairs, p.mode, rng if p.mode == "simulate" else None)
    return Experiment({"F0": p.f0, "mode": p.mode, "trajectory": rows}, rows, "distill")


def run_steane(p, rng) -> Experiment:
    if p.theta is None:
        alpha, beta = random_state(1, rng).amplitudes
    else:
        alpha, beta = bloch_state(p.theta, p.phi).amplitudes
    encoded = steane_encode(alpha, beta)
    errors = [p.error.upper()] if p.error else [pauli_string(7, pos, kind) for pos in range(1, 8) for kind in "XYZ"]
    rows = []
    for error in errors:
        fixed = steane_correct(encoded, error, rng)
        rows.append(dict(fixed.to_dict(), error=error, fidelity=code_space_fidelity(fixed.state, encoded)))
    payload = {"logical": [[float(np.real(alpha)), float(np.imag(alpha))], [float(np.real(beta)), float(np.imag(beta))]],
               "corrections": rows, "min_fidelity": min(r["fidelity"] for r in rows)}
    return Experiment(payload, rows, "steane")


def run_hamming(p, rng) -> Experiment:
    code = hamming_734()
    row = {"received": p.word, "syndrome": syndrome(code, p.word), "corrected": word_str(correct(code, p.word)),
           "message": decode(code, p.word)}
    return Experiment(dict(row, code=code.to_dict()), [row], "hamming")


def run_bounds(p, rng) -> Experiment:
    rows = bound_table(p.q, p.points)
    payload = {"q": p.q, "table": rows}
    if p.t is not None or p.n is not None:
        if p.t is None or p.n is None:
            raise DomainError("quantum bounds need both --t and --n")
        payload["quantum"] = quantum_bounds(p.t, p.n)
    return Experiment(payload, rows, "bounds")


def run_qft(p, rng) -> Experiment:
    circuit = qft_circuit(p.k, p.d)
    error = float(np.abs(circuit_unitary(circuit) - dft_unitary(p.d ** p.k)).max())
    row = dict(qft_gate_counts(circuit), K=p.k, d=p.d, gates=len(circuit), max_error=error)
    return Experiment(row, [row], "qft")


def run_synth(p, rng) -> Experiment:
    rows = []
    for sample in range(p.samples):
        u = random_unitary(2, rng)
        circuit = synthesize_controlled_u(u, p.controls)
        error = _phase_error(circuit_unitary(circuit), controlled_matrix(u, p.controls))
        rows.append({"sample": sample, "controls": p.controls, "gates": len(circuit),
                     "predicted_gates": controlled_u_cost(p.controls), "max_error": error})
    payload = {"controls": p.controls, "samples": rows, "max_error": max(r["max_error"] for r in rows)}
    return Experiment(payload, rows, "synth")


def run_rabi(p, rng) -> Experiment:
    f = RabiField(p.omega0, p.omega1, p.omega0 if p.omega is None else p.omega)
    rows = rabi_trace(f, np.linspace(0.0, p.t_max, p.points))
    payload = {"omega0": f.omega0, "omega1": f.omega1, "omega": f.omega, "Omega": f.Omega,
               "max_flip_probability": max_flip_prob(f), "trace": rows}
    if f.Omega > 0:
        payload["pi_pulse_time"] = pi_pulse_time(f)
    if f.on_resonance:
        pulses = rabi_rotation_pulses(p.alpha, p.beta, p.gamma, f)
        target = rz(p.alpha) @ ry(p.beta) @ rz(p.gamma)
        payload["rotation"] = {"pulses": pulses,
                               "max_error": float(np.abs(pulse_program_unitary(pulses, f) - target).max())}
    return Experiment(payload, rows, "rabi")


def _ion_reference(kind: str, i: int, j: int, n: int) -> np.ndarray:
    """CPhase or CNOT on the n-ion computational block; ion 0 is the most significant bit."""
    dim = 2 ** n
    out = np.zeros((dim, dim), dtype=complex)
    for b in range(dim):
        ci, cj = (b >> (n - 1 - i)) & 1, (b >> (n - 1 - j)) & 1
        if kind == "cphase":
            out[b, b] = -1.0 if ci and cj else 1.0
        else:
            out[b ^ (ci << (n - 1 - j)), b] = 1.0
    return out


def run_iontrap(p, rng) -> Experiment:
    if not (p.control < p.ions and p.target < p.ions):
        raise DomainError(f"ions {p.control}, {p.target} outside a chain of {p.ions}")
    rows = []
    for kind, build in (("cphase", cz_cphase), ("cnot", cz_cnot)):
        u = build(p.control, p.target, p.ions)
        block, reference = computational_block(u, p.ions), _ion_reference(kind, p.control, p.target, p.ions)
        c = phase_frame(block, reference)
        rows.append({"gate": kind, "leakage": leakage(u, p.ions), "max_error": _phase_error(block, reference),
                     "phase_re": None if c is None else c.real, "phase_im": None if c is None else c.imag})
    return Experiment({"ions": p.ions, "control": p.control, "target": p.target, "gates": rows}, rows, "iontrap")


def run_nmr(p, rng) -> Experiment:
    if p.sequence == "prepare":
        trace = nmr_prepare_pseudo_pure()
        rows = [{"step": k, "pulse": label, "deviation": state.describe()} for k, (label, state) in enumerate(trace)]
        return Experiment({"sequence": "prepare", "trace": rows, "final": trace[-1][1]}, rows, "nmr")
    if p.sequence == "bell":
        state = nmr_bell_sequence()
        signal = nmr_signal(state)
        row = {"step": 0, "pulse": "bell", "deviation": state.describe()}
        return Experiment({"sequence": "bell", "deviation": state, "signal": [signal.real, signal.imag]},
                          [row], "nmr")
    if p.sequence == "cnot":
        target = standard_gate("CNOT").matrix
        u = nmr_cnot_sequence()
        row = {"step": 0, "pulse": "cnot", "deviation": ""}
        payload = {"sequence": "cnot", "unitary_error": _phase_error(u, target),
                   "superoperator_distance": superoperator_distance(CNOT_PULSES, target)}
        return Experiment(payload, [row], "nmr")
    pair = IsingPair(p.omega1, p.omega2, p.coupling)
    payload = {"sequence": "ising", "levels": ising_levels(pair), "transitions": ising_transition_frequencies(pair),
               "selective_regime": pair.in_selective_regime, "cnot_line_resolved": ising_cnot_check(pair),
               "cnot_error": _phase_error(ising_cnot(), standard_gate("CNOT").matrix)}
    rows = [{"step": k, "pulse": name, "deviation": f"{freq:.12g}"}
            for k, (name, freq) in enumerate(payload["transitions"].items())]
    return Experiment(payload, rows, "nmr")


def run_kane(p, rng) -> Experiment:
    params = KaneParams.phosphorus(B=p.b, J=p.j) if p.a is None else KaneParams(A=p.a, J=p.j, B=p.b)
    try:
        nu_j = kane_omega_J(params)
    except DomainError as exc:
        logging.warning(f"perturbative exchange splitting skipped: {exc}")
        nu_j = None
    row = {"B": params.B, "J": params.J, "A": params.A, "nu_A": kane_splitting(params), "nu_J": nu_j,
           "nu_J_exact": kane_exact_omega_J(params), "nu_ac": kane_omega_ac(params),
           "crossover_field": kane_crossover_field(params)}
    payload = dict(row)
    if p.schedule_steps:
        payload["schedule"] = kane_cnot_schedule_check(params, steps=p.schedule_steps)
    return Experiment(payload, [row], "kane")


def _load_machine(name: str) -> TuringMachine:
    if name in FIXTURES:
        return FIXTURES[name]()
    path = Path(name)
    if not path.is_file():
        raise MalformedMachineError(f"{name!r} is neither a built-in machine ({', '.join(FIXTURES)}) nor a file")
    return TuringMachine.from_json(path.read_bytes())


def run_tm(p, rng) -> Experiment:
    tm = _load_machine(p.machine)
    result = run(tm, p.tape, p.max_steps, head=p.head)
    row = dict(result.to_dict(), machine=tm.name)
    return Experiment(dict(row, table=tm.rows(), description=tm.describe()), [row], "tm")


def run_beaver(p, rng) -> Experiment:
    result = busy_beaver_search(p.states, p.step_cap, p.allow_long)
    payload = result.to_dict()
    row = {k: v for k, v in payload.items() if k != "witnesses"}
    return Experiment(payload, [row], "beaver")


def run_rsa(p, rng) -> Experiment:
    key = rsa_keygen(p.p1, p.p2, p.d)
    blocks = split_blocks(text_to_number_string(p.message), key.N)
    cipher = [rsa_encrypt(b, key) for b in blocks]
    broken = rsa_break(key.N, key.c, p.backend, rng)
    recovered = [pow(c, broken.d, key.N) for c in cipher]
    if recovered != [rsa_decrypt(c, key) for c in cipher]:
        raise DomainError("recovered exponent does not decrypt like the private key")
    rows = [{"block": b, "cipher": c, "recovered": r} for b, c, r in zip(blocks, cipher, recovered)]
    payload = {"public": key.to_dict(), "break": broken, "blocks": rows}
    return Experiment(payload, rows, "rsa")


EXPERIMENTS: Dict[str, Callable] = {
    "shor": run_shor, "grover": run_grover, "simon": run_simon, "dj": run_dj, "teleport": run_teleport,
    "dense": run_dense, "bb84": run_bb84, "bbm92": run_bbm92, "distill": run_distill, "steane": run_steane,
    "hamming": run_hamming, "bounds": run_bounds, "qft": run_qft, "synth": run_synth, "rabi": run_rabi,
    "iontrap": run_iontrap, "nmr": run_nmr, "kane": run_kane, "tm": run_tm, "beaver": run_beaver, "rsa": run_rsa,
}


def execute(config: ExperimentConfig) -> Experiment:
    started = time.perf_counter()
    experiment = EXPERIMENTS[config.subcommand](config.parameters, make_rng(config.seed))
    experiment.payload = {"subcommand": config.subcommand, "seed": config.seed, "result": experiment.payload}
    logging.info(f"{config.subcommand} finished in {format_timespan(time.perf_counter() - started)}")
    return experiment
