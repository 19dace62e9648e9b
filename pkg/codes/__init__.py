from .information import (TypicalSet, shannon_entropy, h2, hq, mutual_information, bsc_capacity, bound_curves,
                          bound_table, quantum_bounds, typical_count)
from .linear import (LinearCode, SyndromeTable, as_word, word_str, min_distance, encode, decode, correct, syndrome,
                     message_of, coset_leader_table, dual_code, is_subcode, weight_enumerator, repetition_code,
                     hamming_code, hamming_734, hamming_error_position)
from .css import (CssCode, SteaneCorrection, STEANE_PARITY, css_code, steane_code, steane_encode, steane_syndrome,
                  steane_correct, pauli_string, apply_pauli_string, code_space_fidelity, word_state)

__all__ = [
    'TypicalSet', 'shannon_entropy', 'h2', 'hq', 'mutual_information', 'bsc_capacity', 'bound_curves',
    'bound_table', 'quantum_bounds', 'typical_count',
    'LinearCode', 'SyndromeTable', 'as_word', 'word_str', 'min_distance', 'encode', 'decode', 'correct', 'syndrome',
    'message_of', 'coset_leader_table', 'dual_code', 'is_subcode', 'weight_enumerator', 'repetition_code',
    'hamming_code', 'hamming_734', 'hamming_error_position',
    'CssCode', 'SteaneCorrection', 'STEANE_PARITY', 'css_code', 'steane_code', 'steane_encode', 'steane_syndrome',
    'steane_correct', 'pauli_string', 'apply_pauli_string', 'code_space_fidelity', 'word_state',
]
