from .oracles import (BooleanOracle, constant_oracle, balanced_bit_oracle, parity_oracle, period_oracle,
                      marked_oracle)
from .deutsch_jozsa import Verdict, DeutschJozsaResult, deutsch_jozsa, deutsch_jozsa_classical
from .simon import SimonResult, simon, simon_sample, gf2_nullspace, gf2_rank, span, dot2
from .grover import (GroverParams, GroverResult, grover_reduced_kernel, grover_spectrum, grover_eigenvectors,
                     grover_amplitude, grover_reduced_success, grover_success_curve, grover_peak,
                     grover_optimal_m, grover_exact_m, grover_search, nearest_int)
from .number_theory import (mod_exp, gcd, multiplicative_order, continued_fraction, continued_fraction_convergents,
                            best_convergent, prime_power_factor, is_prime_power, shor_register_size)
from .shor import (Backend, ShorContext, OrderResult, FactorResult, FailureCause, shor_prob_q,
                   shor_prob_q_conditional, good_q_set, good_q_mass, order_from_measurement, shor_order,
                   shor_histogram, factor, factor_with, factor_success_rate)

__all__ = [
    'BooleanOracle', 'constant_oracle', 'balanced_bit_oracle', 'parity_oracle', 'period_oracle', 'marked_oracle',
    'Verdict', 'DeutschJozsaResult', 'deutsch_jozsa', 'deutsch_jozsa_classical',
    'SimonResult', 'simon', 'simon_sample', 'gf2_nullspace', 'gf2_rank', 'span', 'dot2',
    'GroverParams', 'GroverResult', 'grover_reduced_kernel', 'grover_spectrum', 'grover_eigenvectors',
    'grover_amplitude', 'grover_reduced_success', 'grover_success_curve', 'grover_peak',
    'grover_optimal_m', 'grover_exact_m', 'grover_search', 'nearest_int',
    'mod_exp', 'gcd', 'multiplicative_order', 'continued_fraction', 'continued_fraction_convergents',
    'best_convergent', 'prime_power_factor', 'is_prime_power', 'shor_register_size',
    'Backend', 'ShorContext', 'OrderResult', 'FactorResult', 'FailureCause', 'shor_prob_q',
    'shor_prob_q_conditional', 'good_q_set', 'good_q_mass', 'order_from_measurement', 'shor_order',
    'shor_histogram', 'factor', 'factor_with', 'factor_success_rate',
]
