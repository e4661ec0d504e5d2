"""Partial sums of subword-counting sequences.

Build the orbit of a selector word under the two digit maps, assemble the
signed-permutation transfer matrices, evaluate exact partial-sum vectors,
decide the modulus-2 spectral obstruction exactly, and certify bounded
growth through cycle-parity certificates and the known word families.
"""

from .words import (ArityError, BinaryWord, CapacityError, DomainError,
                    WordParseError, canonical_base, complement, concat,
                    conjunction, ones, power, single_one, word, xor, zeros)
from .counting import (bracket_eval, check_doubling_recurrences, count_factor,
                       count_subword, expansion, prefix_parity_mask,
                       subword_parity)
from .dynamics import (Orbit, PathResult, StepResult, apply_path,
                       cycle_first_letter_parity, cycle_length,
                       cycle_length_bound, cycle_of, orbit, step, step_inverse)
from .linrep import (PartialSumEvaluator, SignedPermutation, apply_sum,
                     build_matrices, constant_c, dense_sum,
                     partial_sum_direct, partial_sum_fast, state_vector)
from .spectra import (RadiusEstimate, SpectralVerdict, cycle_minus_counts,
                      detect_modulus_two, eigenvalue_two_by_determinant,
                      exact_determinant, growth_exponent,
                      sign_cycle_eigenvalue_one, spectral_radius_estimate,
                      two_i_minus_m)
from .certify import (AnalysisReport, Certificate, OneRunResult,
                      VERDICT_INCONCLUSIVE, VERDICT_PROVED_NOT_P,
                      VERDICT_PROVED_P, VERDICT_SPECTRAL_OBSTRUCTION,
                      certificate_valid, check_long_prefix, check_one_run,
                      check_simple_family, check_two_runs, classify,
                      empirical_growth_exponent, find_certificate,
                      match_families, simple_family_pair, two_runs_pair)
from .cli import RunConfig

__all__ = [name for name in dir() if not name.startswith("_")]
