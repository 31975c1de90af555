"""Decision procedures for tree, bounded-height tree and finite duality, and NUF tools."""

from .finite import (
    dismantle_to,
    finite_duality_witness,
    has_finite_duality,
    is_dominated,
    replays,
)
from .height import (
    crushed_cylinder,
    crushed_cylinder_ends,
    has_bounded_height_tree_duality,
    projection_distance,
)
from .nuf import (
    NufCandidate,
    combine_nuf_product,
    lift_nuf_arc_graph,
    lift_nuf_pultr,
    median_nuf,
    nuf_from_function,
    order_statistic_nuf,
    restrict_nuf_core,
    search_nuf,
    verify_nuf,
)
from .tree import (
    check_tree_duality,
    has_tree_duality,
    power_set_structure,
    singleton_embedding,
)

__all__ = [
    'NufCandidate',
    'check_tree_duality',
    'combine_nuf_product',
    'crushed_cylinder',
    'crushed_cylinder_ends',
    'dismantle_to',
    'finite_duality_witness',
    'has_bounded_height_tree_duality',
    'has_finite_duality',
    'has_tree_duality',
    'is_dominated',
    'lift_nuf_arc_graph',
    'lift_nuf_pultr',
    'median_nuf',
    'nuf_from_function',
    'order_statistic_nuf',
    'power_set_structure',
    'projection_distance',
    'replays',
    'restrict_nuf_core',
    'search_nuf',
    'singleton_embedding',
    'verify_nuf',
]
