from .machine import (HALT, BLANK, Transition, TuringMachine, TapeRun, run, state_name, parse_state, tape_from_string,
                      two_state_example, adding_machine, adding_tape, three_state_beaver, FIXTURES)
from .beaver import BeaverResult, busy_beaver_search, machine_count, transition_choices, can_halt

__all__ = [
    'HALT', 'BLANK', 'Transition', 'TuringMachine', 'TapeRun', 'run', 'state_name', 'parse_state', 'tape_from_string',
    'two_state_example', 'adding_machine', 'adding_tape', 'three_state_beaver', 'FIXTURES',
    'BeaverResult', 'busy_beaver_search', 'machine_count', 'transition_choices', 'can_halt',
]
