
import logging

from .version import __version__
from .exceptions import CapExceededError, VerificationError, InfeasibleCopiesError
from .conceptspace import ConceptSpace, LabelledSample, restrict
from .relationspace import RelationSpace, EmbeddingMap
from .relationspace import to_relation, dual, check_embedding, find_embedding
from .stats.vcdim import VcDimension, VcReport, MaximumCheck
from .stats.vcdim import vc_dimension, shatter_coefficients, is_shattered
from .stats.vcdim import is_maximum, is_maximal, count_removable
from .stats.bounds import BoundQuery, BetaOptimizer
from .stats.bounds import binom_leq, tail_bound, bound_value, optimize_beta
from .stats.bounds import figure31_data, check_lemma322, check_884
from .stats.bounds import copies_feasible, minimal_copies
from .compression import SchemeKey, CompressionScheme, SchemeVerifier
from .compression import Counterexample, verify_scheme
from .solver import SchemeSolver, SolveResult, solve_scheme
from .transforms import to_labelled, restrict_scheme, widen_to_copies
from .transforms import cover_to_copy_scheme, from_bit_scheme, from_array_scheme
from .pacsim import Distribution, TrialReport, PacExperiment
from .pacsim import learn, true_error, pac_experiment, event321_experiment
from .read.spacefile import load_space, save_space
from .read.schemefile import load_scheme, save_scheme

__all__ = ['ConceptSpace','LabelledSample','RelationSpace','EmbeddingMap',
           'VcDimension','VcReport','MaximumCheck','BoundQuery','BetaOptimizer',
           'SchemeKey','CompressionScheme','SchemeVerifier','Counterexample',
           'SchemeSolver','SolveResult','Distribution','TrialReport',
           'PacExperiment','CapExceededError','VerificationError',
           'InfeasibleCopiesError',
           'restrict','to_relation','dual','check_embedding','find_embedding',
           'vc_dimension','shatter_coefficients','is_shattered','is_maximum',
           'is_maximal','count_removable',
           'binom_leq','tail_bound','bound_value','optimize_beta',
           'figure31_data','check_lemma322','check_884','copies_feasible',
           'minimal_copies',
           'verify_scheme','solve_scheme','to_labelled','restrict_scheme',
           'widen_to_copies','cover_to_copy_scheme','from_bit_scheme',
           'from_array_scheme',
           'learn','true_error','pac_experiment','event321_experiment',
           'load_space','save_space','load_scheme','save_scheme']

logger = logging.getLogger(__name__)
