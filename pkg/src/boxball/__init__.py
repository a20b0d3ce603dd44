"""The box-ball soliton automaton, its stack permutations and energy functions."""

from .carrier import Carrier, EnergyReport, energy_profile, energy_sites_predicted, evolve_carrier, r_step, transfer
from .matching import PairRecord, ParenSeq, Token, match_rounds, match_stack, stack_permutation
from .poset import (
    AntichainFamily,
    ChainFamily,
    Partition,
    PermutationPoset,
    PosetTooLarge,
    antichain_decomposition,
    depth_chains,
    greene_D,
    greene_I,
    lambda_of,
    lambda_prime_of,
    poset_of_word,
    stack_poset,
    transpose,
)
from .rsk import Tableau, p_symbol, row_insert, shape
from .state import (
    BoxBallState,
    SolitonProfile,
    StateParseError,
    evolve,
    evolve_tts,
    is_asymptotic,
    parse_state,
    solitons,
)
from .walkpath import (
    GroupPartition,
    Walk,
    delete_concave,
    delete_convex,
    evolve_reflect,
    group_partition,
    to_walk,
    walk_to_state,
)

__version__ = "0.1.0"
