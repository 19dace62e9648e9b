from .library import (Gate, standard_gate, custom_gate, gate_names, controlled_matrix, rx, ry, rz, ph, e_gate,
                      dft_matrix, SIGMA_X, SIGMA_Y, SIGMA_Z, IDENTITY)
from .circuit import Circuit, circuit_unitary, run, ghz_circuit, circuit_to_json, circuit_from_json
from .synthesis import (EulerDecomposition, euler_decompose, abc_factors, unitary_sqrt, synthesize_controlled_u,
                        mcx_circuit, controlled_u_cost)
from .qft import qft_circuit, qft_gate_counts, qft_phase, dft_unitary

__all__ = [
    'Gate', 'standard_gate', 'custom_gate', 'gate_names', 'controlled_matrix', 'rx', 'ry', 'rz', 'ph', 'e_gate',
    'dft_matrix', 'SIGMA_X', 'SIGMA_Y', 'SIGMA_Z', 'IDENTITY',
    'Circuit', 'circuit_unitary', 'run', 'ghz_circuit', 'circuit_to_json', 'circuit_from_json',
    'EulerDecomposition', 'euler_decompose', 'abc_factors', 'unitary_sqrt', 'synthesize_controlled_u',
    'mcx_circuit', 'controlled_u_cost',
    'qft_circuit', 'qft_gate_counts', 'qft_phase', 'dft_unitary',
]
