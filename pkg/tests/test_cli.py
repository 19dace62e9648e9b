import pytest
import yaml
from pydantic import ValidationError

from cli import app, run_cli
from cli.models import ExperimentConfig
from config import runtime_config
from core.serialization import loads


def invoke(capsys, *argv):
    code = run_cli(list(argv))
    captured = capsys.readouterr()
    return code, captured.out


def test_beaver_two_states(capsys):
    code, out = invoke(capsys, "beaver", "--states", "2", "--seed", "1")
    assert code == 0
    payload = loads(out)
    assert payload["subcommand"] == "beaver"
    assert payload["seed"] == 1
    assert payload["result"]["sigma"] == 4
    assert payload["result"]["sigma_prime"] == 6


def test_equal_seeds_give_identical_output(capsys):
    first = invoke(capsys, "bb84", "--n", "200", "--seed", "5")
    second = invoke(capsys, "bb84", "--n", "200", "--seed", "5")
    assert first[0] == second[0] == 0
    assert first[1] == second[1]


def test_global_seed_matches_subcommand_seed(capsys):
    _, before = invoke(capsys, "--seed", "9", "bb84", "--n", "100")
    _, after = invoke(capsys, "bb84", "--n", "100", "--seed", "9")
    assert before == after
    assert loads(after)["seed"] == 9


def test_hamming_csv_follows_schema(capsys):
    code, out = invoke(capsys, "hamming", "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "received,syndrome,corrected,message"
    assert lines[1].startswith("0110001,110,0110011,")


def test_shor_csv_header(capsys):
    code, out = invoke(capsys, "shor", "--n", "15", "--a", "7", "--format", "csv")
    assert code == 0
    assert out.splitlines()[0] == "N,a,r,factors,failure,method,attempts"


@pytest.mark.parametrize("argv", [
    ["beaver", "--states", "4"],
    ["hamming", "--word", "012"],
    ["distill", "--f0", "0.4"],
    ["bb84", "--bogus"],
    ["nosuchcommand"],
    ["--jobs", "0", "hamming"],
])
def test_usage_errors_exit_two(capsys, argv):
    code, out = invoke(capsys, *argv)
    assert code == 2
    assert out == ""


@pytest.mark.parametrize("argv", [
    ["beaver", "--states", "3"],
    ["tm", "--machine", "nonexistent"],
    ["bounds", "--t", "1"],
])
def test_domain_errors_exit_one(capsys, argv):
    code, out = invoke(capsys, *argv)
    assert code == 1
    assert out == ""


def test_out_writes_file(capsys, tmp_path):
    target = tmp_path / "dense.json"
    code, out = invoke(capsys, "dense", "--out", str(target))
    assert code == 0
    assert out == ""
    assert loads(target.read_bytes())["subcommand"] == "dense"


def test_relative_out_lands_in_output_dir(capsys, tmp_path):
    runtime_config.update_output_settings(output_dir=str(tmp_path))
    code, _ = invoke(capsys, "hamming", "--format", "csv", "--out", "runs/hamming.csv")
    assert code == 0
    assert (tmp_path / "runs" / "hamming.csv").read_text().startswith("received,")


def test_run_yaml_config(capsys, tmp_path):
    config = tmp_path / "experiment.yaml"
    config.write_text(yaml.safe_dump({"subcommand": "tm", "parameters": {"machine": "adder", "tape": "11011"},
                                      "seed": 3}))
    code, out = invoke(capsys, "run", str(config))
    assert code == 0
    payload = loads(out)
    assert payload["subcommand"] == "tm"
    assert payload["seed"] == 3


def test_run_yaml_with_unknown_key_is_usage_error(capsys, tmp_path):
    config = tmp_path / "experiment.yaml"
    config.write_text(yaml.safe_dump({"subcommand": "hamming", "parameters": {"word": "0110001"}, "colour": "red"}))
    code, out = invoke(capsys, "run", str(config))
    assert code == 2
    assert out == ""


def test_experiment_config_rejects_unknown_parameter():
    with pytest.raises(ValidationError):
        ExperimentConfig.model_validate({"subcommand": "grover", "parameters": {"qbits": 3}})


def test_experiment_config_types_parameters():
    config = ExperimentConfig.model_validate({"subcommand": "grover", "parameters": {"qubits": 3}})
    assert config.parameters.qubits == 3
    assert config.parameters.marked == 0
    assert config.format == "json"


def test_command_help_names_its_topic():
    helps = {command.name or command.callback.__name__: command.callback.__doc__ for command in app.registered_commands}
    assert len(helps) == 22
    assert helps["beaver"].startswith("The Turing Machine.")
    assert helps["tm"].startswith("The Turing Machine.")
    assert helps["synth"].startswith("Quantum Logic Gates and Quantum Circuits.")
    assert helps["shor"].startswith("Shor Algorithm.")
    assert all(doc and doc.strip() for doc in helps.values())
