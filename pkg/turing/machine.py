"""Deterministic one-tape Turing machines over the symbols 0 (blank), 1, ..., A.

States are 0..S-1, shown as letters A, B, C, ...; HALT is -1, shown as H. The head starts in
state A, and a transition into H still writes and moves and counts as a step.
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, NamedTuple, Optional, Sequence, Tuple, Union

from core.errors import DomainError, MalformedMachineError
from core.serialization import dumps, loads

HALT = -1
BLANK = 0
MOVES = {"L": -1, "R": 1}

StateLike = Union[int, str]


def state_name(state: int) -> str:
    return "H" if state == HALT else chr(ord("A") + state)


def parse_state(value: StateLike) -> int:
    if isinstance(value, str):
        value = value.strip().upper()
        if value in ("H", "HALT"):
            return HALT
        if len(value) == 1 and value.isalpha():
            return ord(value) - ord("A")
        if value.startswith("S") and value[1:].isdigit():
            return int(value[1:]) - 1
        raise MalformedMachineError(f"cannot read state {value!r}")
    return int(value)


class Transition(NamedTuple):
    next: int
    write: int
    move: str

    def to_string(self) -> str:
        return f"{self.write}{self.move}{state_name(self.next)}"


Table = Dict[Tuple[int, int], Transition]


@dataclass(frozen=True)
class TuringMachine:
    num_states: int
    table: Table = field(default_factory=dict)
    num_symbols: int = 1
    name: str = "tm"

    def __post_init__(self):
        if self.num_states < 1 or self.num_symbols < 1:
            raise MalformedMachineError("a machine needs at least one state and one non-blank symbol")
        for (state, symbol), t in self.table.items():
            if not 0 <= state < self.num_states:
                raise MalformedMachineError(f"instruction for unknown state {state}")
            if not 0 <= symbol <= self.num_symbols or not 0 <= t.write <= self.num_symbols:
                raise MalformedMachineError(f"symbol outside 0..{self.num_symbols} in {state_name(state)}{symbol}")
            if t.move not in MOVES:
                raise MalformedMachineError(f"move must be L or R, got {t.move!r}")
            if t.next != HALT and not 0 <= t.next < self.num_states:
                raise MalformedMachineError(f"transition into unknown state {t.next}")

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence], num_states: Optional[int] = None, num_symbols: int = 1,
                  name: str = "tm") -> "TuringMachine":
        """Rows (state, symbol, next, write, move); two rows for one (state, symbol) pair are rejected."""
        table: Table = {}
        for row in rows:
            if len(row) != 5:
                raise MalformedMachineError(f"instruction rows have five fields, got {row!r}")
            state, symbol, nxt, write, move = row
            key = (parse_state(state), int(symbol))
            if key in table:
                raise MalformedMachineError(f"two instructions for {state_name(key[0])}{key[1]}")
            table[key] = Transition(parse_state(nxt), int(write), str(move).upper())
        if num_states is None:
            used = [s for s, _ in table] + [t.next for t in table.values() if t.next != HALT]
            num_states = max(used) + 1 if used else 1
        return cls(num_states, table, num_symbols, name)

    def rows(self) -> List[list]:
        return [[state_name(s), sym, state_name(t.next), t.write, t.move] for (s, sym), t in sorted(self.table.items())]

    def to_dict(self):
        return {"name": self.name, "states": self.num_states, "symbols": self.num_symbols + 1, "table": self.rows()}

    def to_json(self) -> bytes:
        return dumps(self.to_dict())

    @classmethod
    def from_json(cls, data: Union[str, bytes, dict]) -> "TuringMachine":
        payload = data if isinstance(data, dict) else loads(data)
        try:
            return cls.from_rows(payload["table"], payload["states"], payload.get("symbols", 2) - 1,
                                 payload.get("name", "tm"))
        except KeyError as exc:
            raise MalformedMachineError(f"machine JSON is missing {exc}")

    def describe(self) -> str:
        """Instruction table, one line per state: 'A  0:1RB  1:1LC'."""
        lines = []
        for s in range(self.num_states):
            cells = []
            for sym in range(self.num_symbols + 1):
                t = self.table.get((s, sym))
                cells.append(f"{sym}:{t.to_string() if t else '---'}")
            lines.append(f"{state_name(s)}  " + "  ".join(cells))
        return "\n".join(lines)


@dataclass(frozen=True)
class TapeRun:
    tape: Dict[int, int]
    head: int
    state: int
    steps: int
    halted: bool
    reason: str

    @property
    def ones_written(self) -> int:
        return sum(1 for v in self.tape.values() if v != BLANK)

    def tape_string(self) -> str:
        cells = [p for p, v in self.tape.items() if v != BLANK]
        if not cells:
            return ""
        return "".join(str(self.tape.get(p, BLANK)) for p in range(min(cells), max(cells) + 1))

    def to_dict(self):
        return {"halted": self.halted, "reason": self.reason, "steps": self.steps, "ones": self.ones_written,
                "head": self.head, "state": state_name(self.state), "tape": self.tape_string()}


def tape_from_string(cells: str, offset: int = 0) -> Dict[int, int]:
    try:
        return {offset + i: int(ch) for i, ch in enumerate(cells) if int(ch) != BLANK}
    except ValueError:
        raise DomainError(f"tape cells must be digits, got {cells!r}")


def run(tm: TuringMachine, tape: Union[str, Dict[int, int], None] = None, max_steps: int = 10_000,
        head: int = 0, state: int = 0) -> TapeRun:
    """Write, change state, move, until H, a missing instruction, or max_steps.

    Running out of steps is reported with reason 'timeout'; it is not an error.
    """
    cells = tape_from_string(tape) if isinstance(tape, str) else dict(tape or {})
    steps = 0
    while state != HALT:
        if steps >= max_steps:
            logging.debug(f"{tm.name}: no halt within {max_steps} steps")
            return TapeRun(cells, head, state, steps, False, "timeout")
        symbol = cells.get(head, BLANK)
        t = tm.table.get((state, symbol))
        if t is None:
            return TapeRun(cells, head, state, steps, False, "undefined")
        if t.write == BLANK:
            cells.pop(head, None)
        else:
            cells[head] = t.write
        head += MOVES[t.move]
        state = t.next
        steps += 1
    return TapeRun(cells, head, state, steps, True, "halt")


def two_state_example() -> TuringMachine:
    """Moves right over 1s, turns the first blank into a 1, moves right once more and halts."""
    return TuringMachine.from_rows([
        ("A", 1, "A", 1, "R"),
        ("A", 0, "B", 1, "R"),
        ("B", 0, "H", 0, "R"),
        ("B", 1, "H", 1, "R"),
    ], num_states=2, name="two-state example")


def adding_machine() -> TuringMachine:
    """Unary n1 + n2 on tape 1^n1 0 1^n2: erase the leftmost 1, then turn the separator into a 1."""
    return TuringMachine.from_rows([
        ("A", 0, "A", 0, "R"),
        ("A", 1, "B", 0, "R"),
        ("B", 1, "B", 1, "R"),
        ("B", 0, "H", 1, "R"),
    ], num_states=2, name="adding machine")


def adding_tape(n1: int, n2: int) -> str:
    if n1 < 1 or n2 < 1:
        raise DomainError("unary addition needs n1, n2 >= 1")
    return "1" * n1 + "0" + "1" * n2


def three_state_beaver() -> TuringMachine:
    """Leaves six 1s after 13 steps on a blank tape."""
    return TuringMachine.from_rows([
        ("A", 0, "B", 1, "R"), ("A", 1, "C", 1, "L"),
        ("B", 0, "A", 1, "L"), ("B", 1, "B", 1, "R"),
        ("C", 0, "B", 1, "L"), ("C", 1, "H", 1, "R"),
    ], num_states=3, name="3-state busy beaver")


FIXTURES = {"example": two_state_example, "adder": adding_machine, "beaver3": three_state_beaver}
