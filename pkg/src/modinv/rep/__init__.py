"""Finite groups, their matrix representations, and the module constructions."""

from .families import (
    A4_CHAR3_GENERATORS,
    a4_char3_module,
    normalizer_twist_module,
    order_d_residue,
    p_times_a_module,
    verify_zqzd_decomposition,
    zqzd_decomposition,
    zqzd_group,
    zqzd_summand,
)
from .groups import (
    Group,
    Subgroup,
    alternating_group_4,
    automorphism_order,
    check_automorphism,
    closure,
    conjugation_automorphism,
    cyclic_group,
    direct_product,
    format_permutation,
    group_from_closure,
    group_from_permutations,
    inversion_automorphism,
    klein_four,
    left_regular_permutations,
    normalizer,
    p_complement,
    parse_permutation,
    semidirect_cyclic,
    smallest_prime_divisor,
    subgroup_from_permutations,
    sylow_subgroup,
    symmetric_group,
)
from .modules import (
    Representation,
    direct_sum,
    direct_sum_many,
    fixed_subspace,
    group_from_matrices,
    induce,
    regular_representation,
    restrict,
    trivial_representation,
)
