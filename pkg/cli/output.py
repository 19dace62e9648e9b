"""JSON and CSV emission for experiment results."""
import io
import logging
from functools import lru_cache
from pathlib import Path
from typing import Dict, List, Optional

import pandas as pd
import typer
import yaml
from humanfriendly import format_size

from cli.experiments import Experiment
from config import runtime_config
from core.errors import DomainError
from core.serialization import dumps

SCHEMA_FILE = Path(__file__).with_name("schemas.yaml")


@lru_cache(maxsize=1)
def load_schemas() -> Dict[str, List[str]]:
    with open(SCHEMA_FILE, "r", encoding="utf-8") as fh:
        return yaml.safe_load(fh)


def to_csv(experiment: Experiment) -> bytes:
    schemas = load_schemas()
    if experiment.table not in schemas:
        raise DomainError(f"no CSV schema for table {experiment.table!r}")
    frame = pd.DataFrame(experiment.rows, columns=schemas[experiment.table])
    buffer = io.StringIO()
    frame.to_csv(buffer, index=False, lineterminator="\n")
    return buffer.getvalue().encode("utf-8")


def render(experiment: Experiment, fmt: str) -> bytes:
    if fmt == "csv":
        return to_csv(experiment)
    return dumps(experiment.payload)


def resolve_path(out: Optional[str]) -> Optional[Path]:
    """Relative paths land in runtime_config.output_dir when one is set."""
    if not out:
        return None
    path = Path(out)
    if not path.is_absolute() and runtime_config.output_dir:
        path = Path(runtime_config.output_dir) / path
    return path


def emit(experiment: Experiment, fmt: str = "json", out: Optional[str] = None, stream=None) -> bytes:
    data = render(experiment, fmt)
    path = resolve_path(out)
    if path is None:
        if stream is None:
            typer.echo(data.decode("utf-8"), nl=False)
        else:
            stream.write(data.decode("utf-8"))
    else:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_bytes(data)
        logging.info(f"wrote {format_size(len(data))} to {path}")
    return data
