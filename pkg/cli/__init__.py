from .app import app, run_cli
from .experiments import EXPERIMENTS, Experiment, execute
from .models import ExperimentConfig, PARAMETER_MODELS
from .output import emit, load_schemas, render

__all__ = [
    'app', 'run_cli',
    'EXPERIMENTS', 'Experiment', 'execute',
    'ExperimentConfig', 'PARAMETER_MODELS',
    'emit', 'load_schemas', 'render',
]
