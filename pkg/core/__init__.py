from .errors import (QsimError, DimensionError, NotUnitaryError, InvalidStateError, CapExceededError,
                     RetryBudgetExceeded, DomainError, MalformedMachineError)
from .rng import Rng, make_rng
from .state import (StateVector, basis_state, bloch_state, bloch_angles, random_state, random_unitary, tensor,
                    apply_unitary, apply_operator_dense, is_unitary, overlap, equal_up_to_phase)
from .density import (DensityMatrix, density_from_state, mixture, random_density, partial_trace,
                      fidelity_to_pure, expectation)
from .measurement import MeasurementRecord, probabilities, measure, project, sample_counts
from .serialization import dumps, loads, state_to_json, state_from_json, density_to_json

__all__ = [
    'QsimError', 'DimensionError', 'NotUnitaryError', 'InvalidStateError', 'CapExceededError',
    'RetryBudgetExceeded', 'DomainError', 'MalformedMachineError',
    'Rng', 'make_rng',
    'StateVector', 'basis_state', 'bloch_state', 'bloch_angles', 'random_state', 'random_unitary', 'tensor',
    'apply_unitary', 'apply_operator_dense', 'is_unitary', 'overlap', 'equal_up_to_phase',
    'DensityMatrix', 'density_from_state', 'mixture', 'random_density', 'partial_trace',
    'fidelity_to_pure', 'expectation',
    'MeasurementRecord', 'probabilities', 'measure', 'project', 'sample_counts',
    'dumps', 'loads', 'state_to_json', 'state_from_json', 'density_to_json',
]
