"""Exhaustive busy-beaver search over binary S-state machines.

Machines are explored in tree normal form: simulation starts from an empty table and branches
only when it reaches an undefined instruction. A leaf reached with u instructions still undefined
stands for [4(S+1)]^u complete machines that behave identically, so the weighted leaf count is
exactly [4(S+1)]^(2S).
"""
import logging
import time
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Set

import networkx as nx
from humanfriendly import format_timespan
from joblib import Parallel, delayed
from tqdm import tqdm

from config import BEAVER_STEP_CAPS, runtime_config
from core.errors import DomainError
from turing.machine import HALT, MOVES, Table, Transition, TuringMachine

LOOP_CHECK_STEPS = 5000  # configurations are remembered only this long after the last branch
MAX_EXHAUSTIVE_STATES = 3


def machine_count(S: int) -> int:
    return (4 * (S + 1)) ** (2 * S)


def transition_choices(S: int) -> List[Transition]:
    return [Transition(nxt, write, move)
            for write in (0, 1) for move in ("L", "R") for nxt in list(range(S)) + [HALT]]


def can_halt(table: Table, start: int, S: int) -> bool:
    """Is H reachable in the state graph, counting every undefined instruction as a possible halt?"""
    g = nx.DiGraph()
    g.add_nodes_from(list(range(S)) + [HALT])
    for q in range(S):
        for sym in (0, 1):
            t = table.get((q, sym))
            g.add_edge(q, HALT if t is None else t.next)
    return nx.has_path(g, start, HALT)


def _at_edge(ones: Set[int], head: int, direction: int) -> bool:
    """Every cell from the head onward in this direction is blank."""
    if not ones:
        return True
    return head > max(ones) if direction > 0 else head < min(ones)


def _runs_away(table: Table, state: int, direction: int) -> bool:
    """From the edge of the written tape, reading blanks and always stepping outward, a state repeats."""
    seen: Set[int] = set()
    while state not in seen:
        seen.add(state)
        t = table.get((state, 0))
        if t is None or t.next == HALT or MOVES[t.move] != direction:
            return False
        state = t.next
    return True


@dataclass
class BeaverTally:
    S: int
    total: int = 0
    halting: int = 0
    never_halting: int = 0
    timed_out: int = 0
    sigma: int = -1
    sigma_prime: int = -1
    sigma_witness: Optional[Table] = None
    steps_witness: Optional[Table] = None

    def leaf(self, table: Table) -> int:
        weight = (4 * (self.S + 1)) ** (2 * self.S - len(table))
        self.total += weight
        return weight

    def halted(self, table: Table, ones: int, steps: int):
        self.halting += self.leaf(table)
        if ones > self.sigma:
            self.sigma, self.sigma_witness = ones, dict(table)
        if steps > self.sigma_prime:
            self.sigma_prime, self.steps_witness = steps, dict(table)

    def merge(self, other: "BeaverTally"):
        self.total += other.total
        self.halting += other.halting
        self.never_halting += other.never_halting
        self.timed_out += other.timed_out
        if other.sigma > self.sigma:
            self.sigma, self.sigma_witness = other.sigma, other.sigma_witness
        if other.sigma_prime > self.sigma_prime:
            self.sigma_prime, self.steps_witness = other.sigma_prime, other.steps_witness


def _explore(S: int, table: Table, state: int, ones: Set[int], head: int, steps: int, cap: int, tally: BeaverTally):
    seen = set()
    since_branch = 0
    while True:
        if state == HALT:
            tally.halted(table, len(ones), steps)
            return
        if steps >= cap:
            tally.timed_out += tally.leaf(table)
            return
        symbol = 1 if head in ones else 0
        t = table.get((state, symbol))
        if t is None:
            for choice in transition_choices(S):
                branch = dict(table)
                branch[(state, symbol)] = choice
                if choice.next != HALT and not can_halt(branch, choice.next, S):
                    tally.never_halting += tally.leaf(branch)
                    continue
                _explore(S, branch, state, set(ones), head, steps, cap, tally)
            return
        if symbol == 0 and _at_edge(ones, head, MOVES[t.move]) and _runs_away(table, state, MOVES[t.move]):
            tally.never_halting += tally.leaf(table)
            return
        if since_branch < LOOP_CHECK_STEPS:
            config = (state, head, frozenset(ones))
            if config in seen:
                tally.never_halting += tally.leaf(table)
                return
            seen.add(config)
            since_branch += 1
        if t.write:
            ones.add(head)
        else:
            ones.discard(head)
        head += MOVES[t.move]
        state = t.next
        steps += 1


def _explore_first(S: int, index: int, cap: int) -> BeaverTally:
    """Subtree where instruction A0 is the index-th choice."""
    tally = BeaverTally(S)
    choice = transition_choices(S)[index]
    table = {(0, 0): choice}
    if choice.next != HALT and not can_halt(table, choice.next, S):
        tally.never_halting += tally.leaf(table)
        return tally
    _explore(S, table, 0, set(), 0, 0, cap, tally)
    return tally


@dataclass
class BeaverResult:
    S: int
    sigma: int
    sigma_prime: int
    witnesses: Dict[str, TuringMachine] = field(default_factory=dict)
    machines: int = 0
    halting: int = 0
    never_halting: int = 0
    timed_out: int = 0
    step_cap: int = 0

    def to_dict(self):
        return {"states": self.S, "sigma": self.sigma, "sigma_prime": self.sigma_prime, "machines": self.machines,
                "halting": self.halting, "never_halting": self.never_halting, "timed_out": self.timed_out,
                "step_cap": self.step_cap, "witnesses": {k: m.rows() for k, m in self.witnesses.items()}}


def busy_beaver_search(S: int, step_cap: Optional[int] = None, allow_long: bool = False) -> BeaverResult:
    """Sigma(S) and Sigma'(S) over all [4(S+1)]^(2S) machines.

    Machines still running at step_cap count as non-halting; the default caps exceed the known
    Sigma' for S <= 3. S = 3 runs only with allow_long.
    """
    if not 1 <= S <= MAX_EXHAUSTIVE_STATES:
        raise DomainError(f"exhaustive search is offered for 1 <= S <= {MAX_EXHAUSTIVE_STATES}, got {S}")
    if S == 3 and not allow_long:
        raise DomainError("the 3-state search is long; pass allow_long to run it")
    cap = step_cap or BEAVER_STEP_CAPS[S]
    started = time.perf_counter()

    branches = range(len(transition_choices(S)))
    if runtime_config.show_progress:
        branches = tqdm(branches, desc=f"BB({S}) first instruction", unit="branch")
    parts = Parallel(n_jobs=runtime_config.n_jobs)(delayed(_explore_first)(S, i, cap) for i in branches)

    tally = BeaverTally(S)
    for part in parts:
        tally.merge(part)
    if tally.total != machine_count(S):
        raise DomainError(f"enumeration covered {tally.total} machines, expected {machine_count(S)}")
    if tally.timed_out:
        logging.warning(f"BB({S}): {tally.timed_out} machines hit the {cap}-step cap and were counted as non-halting")

    witnesses = {}
    if tally.sigma_witness is not None:
        witnesses["sigma"] = TuringMachine(S, tally.sigma_witness, name=f"Sigma({S}) witness")
        witnesses["sigma_prime"] = TuringMachine(S, tally.steps_witness, name=f"Sigma'({S}) witness")
    logging.info(f"BB({S}): Sigma={tally.sigma}, Sigma'={tally.sigma_prime} over {tally.total} machines "
                 f"in {format_timespan(time.perf_counter() - started)}")
    return BeaverResult(S, tally.sigma, tally.sigma_prime, witnesses, tally.total, tally.halting,
                        tally.never_halting, tally.timed_out, cap)
