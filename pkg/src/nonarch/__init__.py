"""Exact finite models of non-archimedean group constructions."""

from .boolean_core import ClopenVector, delta, enumerate_characters, is_separated, pairing_w, xor_add
from .errors import DimensionError, EnumerationLimitError, InputError, OddChainError
from .free_boolean import (
    Chain,
    Configuration,
    UltraSeminormFamily,
    act_on_chain,
    closedness_bound,
    distance_to_image,
    embed_alpha,
    norm,
    norm_bottleneck,
    norm_bruteforce,
    phi_length,
    reduce,
    seminorm_vector,
    sgn,
)
from .heisenberg import HeisenbergElement, SemidirectElement, center, commutator, h_inv, h_mul, m_mul, retraction_check
from .stone_actions import (
    BooleanSubalgebra,
    ClopenPartition,
    Permutation,
    PermGroup,
    act_character,
    act_clopen,
    action_kernel,
    atoms,
    coordinate_embedding,
    invariant_ultrasemimetric,
    stabilizer_MP,
    wreath_retract,
)
from .ultrametric import (
    RationalUltraSpace,
    adjoin_basepoint,
    ball_partition,
    hausdorff_distance,
    isometry_group,
    max_combine,
    orbit_basepoint,
    verify_ultrametric,
)

__version__ = "0.1.0"
