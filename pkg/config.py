import os
import logging
from typing import Optional

import coloredlogs
from dotenv import load_dotenv

load_dotenv()

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'


def setup_logging(level: str = "WARNING", log_file: Optional[str] = None):
    """Install coloured console logging on the root logger, optionally mirrored to a file."""
    root = logging.getLogger()
    coloredlogs.install(level=level, logger=root, fmt=LOG_FORMAT)
    if log_file:
        handler = logging.FileHandler(log_file)
        handler.setFormatter(logging.Formatter(LOG_FORMAT))
        root.addHandler(handler)
    return True


setup_logging()

# Numerical tolerances
ATOL_ALGEBRA = 1e-10
ATOL_PSD = 1e-8
ATOL_CIRCUIT = 1e-9

# Size caps
MAX_DENSE_DIM = 2 ** 14  # Largest dense operator/state dimension the simulators will build
MAX_STATEVECTOR_SHOR = 2 ** 14  # 2^K * N for the state-vector order-finding backend
MAX_CODE_K = 16  # Exhaustive codeword scans
MAX_TYPICAL_N = 24

DEFAULT_SEED = 20250101

# Turing machines
BEAVER_STEP_CAPS = {1: 1000, 2: 1000, 3: 100_000}

# Algorithm budgets
SIMON_ROUNDS_PER_BIT = 10
SIMON_QUERY_FACTOR = 4
SHOR_RETRY_BUDGET = 20
ORDER_MULTIPLE_LIMIT = 1024  # multiples of a convergent denominator tried before a draw counts as uninformative
FACTOR_RETRY_BUDGET = 20
GROVER_SUCCESS_THRESHOLD = 0.5

# Shor state-vector backend is only offered up to this modulus
SHOR_STATEVECTOR_MAX_N = 32


# Runtime configuration (can be modified at runtime)
class RuntimeConfig:
    def __init__(self):
        self.max_dense_dim = MAX_DENSE_DIM
        self.max_statevector_shor = MAX_STATEVECTOR_SHOR
        self.n_jobs = 1
        self.output_dir = os.environ.get("QSIM_OUTPUT_DIR")
        self.show_progress = False
        self.log_level = "WARNING"

    def update_simulation_settings(self, max_dense_dim=None, max_statevector_shor=None, n_jobs=None):
        """Update simulation caps and parallelism with new values"""
        if max_dense_dim is not None:
            self.max_dense_dim = max_dense_dim
        if max_statevector_shor is not None:
            self.max_statevector_shor = max_statevector_shor
        if n_jobs is not None:
            self.n_jobs = n_jobs
        return True

    def update_output_settings(self, output_dir=None, show_progress=None, log_level=None):
        if output_dir is not None:
            self.output_dir = output_dir
        if show_progress is not None:
            self.show_progress = show_progress
        if log_level is not None:
            self.log_level = log_level
        return True


# Instantiate runtime config
runtime_config = RuntimeConfig()
