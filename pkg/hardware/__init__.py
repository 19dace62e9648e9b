from .rabi import (RabiField, RabiPulse, rabi_propagator, spin_flip_prob, max_flip_prob, interaction_picture_propagator,
                   pi_pulse_time, rabi_trace, rabi_rotation_pulses, pulse_program_unitary)
from .ising import IsingPair, ising_levels, ising_transition_frequencies, ising_cnot_check, ising_cphase, ising_cnot
from .ion_trap import (IonPulse, v_pulse, u_pulse, ion_pulse_unitary, pulse_sequence_unitary, ion_basis_index,
                       ion_basis_state, computational_block, leakage, cz_cphase, cz_cphase_pulses, cz_cnot,
                       cz_cnot_pulses, phase_frame)
from .nmr import (ProductOperatorState, NmrPulse, rot, coupling, GRADIENT, nmr_pulse, nmr_sequence, sequence_unitary,
                  thermal_deviation, pseudo_pure_density, nmr_prepare_pseudo_pure, reference_deviation,
                  nmr_bell_sequence, nmr_cnot_sequence, superoperator_distance, nmr_signal, BELL_PULSES, CNOT_PULSES)
from .kane import (KaneParams, kane_splitting, kane_exchange, sector_hamiltonian, kane_sector_levels, symmetric_levels,
                   kane_exact_omega_J, kane_omega_J, kane_energy_11, kane_omega_ac, kane_two_qubit_levels,
                   kane_crossover_field, ScheduleCheck, kane_cnot_schedule_check)

__all__ = [
    'RabiField', 'RabiPulse', 'rabi_propagator', 'spin_flip_prob', 'max_flip_prob', 'interaction_picture_propagator',
    'pi_pulse_time', 'rabi_trace', 'rabi_rotation_pulses', 'pulse_program_unitary',
    'IsingPair', 'ising_levels', 'ising_transition_frequencies', 'ising_cnot_check', 'ising_cphase', 'ising_cnot',
    'IonPulse', 'v_pulse', 'u_pulse', 'ion_pulse_unitary', 'pulse_sequence_unitary', 'ion_basis_index',
    'ion_basis_state', 'computational_block', 'leakage', 'cz_cphase', 'cz_cphase_pulses', 'cz_cnot',
    'cz_cnot_pulses', 'phase_frame',
    'ProductOperatorState', 'NmrPulse', 'rot', 'coupling', 'GRADIENT', 'nmr_pulse', 'nmr_sequence',
    'sequence_unitary', 'thermal_deviation', 'pseudo_pure_density', 'nmr_prepare_pseudo_pure',
    'reference_deviation', 'nmr_bell_sequence', 'nmr_cnot_sequence', 'superoperator_distance', 'nmr_signal',
    'BELL_PULSES', 'CNOT_PULSES',
    'KaneParams', 'kane_splitting', 'kane_exchange', 'sector_hamiltonian', 'kane_sector_levels', 'symmetric_levels',
    'kane_exact_omega_J', 'kane_omega_J', 'kane_energy_11', 'kane_omega_ac', 'kane_two_qubit_levels',
    'kane_crossover_field', 'ScheduleCheck', 'kane_cnot_schedule_check',
]
