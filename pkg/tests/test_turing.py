import pytest

from core import DomainError, MalformedMachineError
from turing import (FIXTURES, HALT, Transition, TuringMachine, adding_machine, adding_tape, busy_beaver_search,
                    can_halt, machine_count, parse_state, run, state_name, three_state_beaver, transition_choices,
                    two_state_example)


def test_state_names():
    assert state_name(0) == "A"
    assert state_name(HALT) == "H"
    assert parse_state("c") == 2
    assert parse_state("S2") == 1
    assert parse_state("halt") == HALT
    with pytest.raises(MalformedMachineError):
        parse_state("??")


def test_three_state_beaver_fixture():
    result = run(three_state_beaver())
    assert result.halted
    assert result.steps == 13
    assert result.ones_written == 6
    assert result.tape_string() == "111111"


def test_two_state_example():
    blank = run(two_state_example())
    assert (blank.steps, blank.ones_written) == (2, 1)
    ones = run(two_state_example(), "11")
    assert (ones.steps, ones.tape_string()) == (4, "111")


@pytest.mark.parametrize("n1", range(1, 7))
@pytest.mark.parametrize("n2", range(1, 7))
def test_adding_machine(n1, n2):
    result = run(adding_machine(), adding_tape(n1, n2))
    assert result.halted
    assert result.tape_string() == "1" * (n1 + n2)


def test_run_stops_without_error():
    loop = TuringMachine.from_rows([("A", 0, "A", 1, "R")], num_states=1)
    timeout = run(loop, max_steps=50)
    assert (timeout.halted, timeout.reason, timeout.steps) == (False, "timeout", 50)
    stuck = run(loop, "1")
    assert (stuck.halted, stuck.reason, stuck.steps) == (False, "undefined", 0)


def test_malformed_machines_are_rejected():
    with pytest.raises(MalformedMachineError):
        TuringMachine.from_rows([("A", 0, "B", 1, "R"), ("A", 0, "H", 1, "L")])
    with pytest.raises(MalformedMachineError):
        TuringMachine.from_rows([("A", 0, "B", 1, "U")], num_states=2)
    with pytest.raises(MalformedMachineError):
        TuringMachine.from_rows([("A", 0, "C", 1, "R")], num_states=2)
    with pytest.raises(MalformedMachineError):
        TuringMachine.from_json({"states": 2})
    with pytest.raises(DomainError):
        run(adding_machine(), "1x1")


def test_machine_json_round_trip():
    for build in FIXTURES.values():
        tm = build()
        assert TuringMachine.from_json(tm.to_json()).table == tm.table
    assert three_state_beaver().describe().splitlines()[0] == "A  0:1RB  1:1LC"


def test_machine_counts():
    assert machine_count(1) == 64
    assert machine_count(2) == 20736
    assert len(transition_choices(2)) == 12


def test_halt_reachability():
    table = {(0, 0): Transition(0, 1, "R"), (0, 1): Transition(0, 1, "L")}
    assert not can_halt(table, 0, 1)
    assert can_halt({(0, 0): Transition(0, 1, "R")}, 0, 1)


def test_busy_beaver_one_state():
    result = busy_beaver_search(1)
    assert (result.sigma, result.sigma_prime) == (1, 1)
    assert result.machines == 64
    assert result.halting + result.never_halting + result.timed_out == 64


def test_busy_beaver_two_states():
    result = busy_beaver_search(2)
    assert (result.sigma, result.sigma_prime) == (4, 6)
    assert result.machines == 20736
    assert result.timed_out == 0
    witness = run(result.witnesses["sigma"])
    assert witness.halted and witness.ones_written == 4
    assert run(result.witnesses["sigma_prime"]).steps == 6


def test_three_state_search_needs_opt_in():
    with pytest.raises(DomainError):
        busy_beaver_search(3)
    with pytest.raises(DomainError):
        busy_beaver_search(4, allow_long=True)


@pytest.mark.slow
def test_busy_beaver_three_states():
    result = busy_beaver_search(3, allow_long=True)
    assert (result.sigma, result.sigma_prime) == (6, 21)
