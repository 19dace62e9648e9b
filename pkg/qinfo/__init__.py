from .entanglement import (SchmidtForm, Ensemble, EntropyReport, schmidt, is_entangled, shannon_bits,
                           von_neumann_entropy, entanglement_entropy, reduced_states, mutual_information_quantum,
                           entropy_inequalities, concavity_gap, holevo_chi, majorizes, locc_convertible, partial_transpose,
                           peres_is_ppt, is_separable, bell, bell_basis, ghz)
from .distillation import (WernerState, DistillationRound, werner, werner_twirl, bell_weights, bbpssw_map,
                           bbpssw_success, bbpssw_round, simulate_round, distillation_trajectory, rounds_to_reach)

__all__ = [
    'SchmidtForm', 'Ensemble', 'EntropyReport', 'schmidt', 'is_entangled', 'shannon_bits',
    'von_neumann_entropy', 'entanglement_entropy', 'reduced_states', 'mutual_information_quantum',
    'entropy_inequalities', 'concavity_gap', 'holevo_chi', 'majorizes', 'locc_convertible', 'partial_transpose',
    'peres_is_ppt', 'is_separable', 'bell', 'bell_basis', 'ghz',
    'WernerState', 'DistillationRound', 'werner', 'werner_twirl', 'bell_weights', 'bbpssw_map',
    'bbpssw_success', 'bbpssw_round', 'simulate_round', 'distillation_trajectory', 'rounds_to_reach',
]
