"""Pumping witnesses for weighted automata over Artinian semirings."""

__version__ = "0.1.0"

from .errors import (ArtinError, BudgetExceeded, DimensionError, FormatError, NotInSupport,
                     NoWitness, SemiringError, UndecidableError, WordTooShort)
from .scalars import (AXIOMS, BooleanSemiring, CustomSemiring, Dual, DualRationals, MaxTimes,
                      ModularIntegers, PrimeField, Rationals, Semiring, TableSemiring, Tier,
                      Violation, axiom_suite, make_semiring, scalar_format, scalar_parse,
                      sr_add, sr_mul)
from .linrep import (LinearRepresentation, Matrix, WeightedWordSample, evaluate, identity,
                     mat_mul, mat_pow, mu_of_word, support_sample, words_up_to)
from .spans import (CapabilityTier, SpanBasis, SubmoduleLattice, enumerate_lattice,
                    enumerate_sublattice, image_basis, is_subspan, length_bound, length_exact,
                    maxtimes_chain, span_elements, span_equal, span_length, span_membership)
from .endos import (EndoReport, factorization_check, injective_surjective, is_pseudoregular,
                    pseudopower)
from .pump import (Claim, GapReport, PumpReport, PumpingWitness, QuasipowerDecomposition,
                   Verdict, apply_letter_map, builtin_claim, claim_words, extract_witness,
                   find_quasipower, gap_sequence, pump_power_witness, pump_verify, pumped_weights,
                   quasipower_constant, reduce_alphabet, refute_support, verify_quasipower)
from .cli import dumps, load, loads, save
