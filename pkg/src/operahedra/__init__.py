"""Exact realizations and cellular diagonals of operahedra.

Operahedra are the polytopes whose faces are indexed by nestings of
planar rooted trees, ranging from the associahedra (linear trees) to the
permutahedra (2-leveled trees).  This package realizes them with exact
integer coordinates, computes the cellular image of their bot-top
diagonal in the principal chamber of the fundamental hyperplane
arrangement, validates it against independent geometric oracles, and
carries the induced signed differential graded operad structure
including the tensor product of homotopy operads.
"""

__version__ = "1.0.0"

from .arrangement import (
    DPair,
    WallVectorError,
    arrangement_bruteforce,
    chamber_signature,
    generate_D,
    is_principal,
    principal_vector,
)
from .diagonal import (
    DiagonalPair,
    bot_top_point,
    coarsen,
    coarsen_nest,
    diagonal_count,
    diagonal_image,
    diagonal_via_projection,
    pair_in_image,
    pair_in_image_cone,
    pair_midpoint,
    tp_bm_filter,
)
from .exact import (
    ConeGenerators,
    ConeMembership,
    DimensionMismatchError,
    EmptyRegionError,
    HRep,
    UnboundedRegionError,
    cone_codim,
    cone_contains,
    extremal_vertex,
    facets_from_vertices,
    vertices_of,
)
from .operad import (
    OperadicTree,
    SignedSum,
    boundary_sign_geometric,
    chain_map_check,
    compose,
    diagonal_pair_sign,
    differential,
    tensor_diagonal,
    tensor_sign_combinatorial,
)
from .realization import (
    LodayPolytope,
    face_vertices,
    loday_point,
    loday_polytope,
    normal_cone,
    theta_embed,
)
from .trees import (
    Nesting,
    NestingError,
    PlanarTree,
    Shuffle,
    TreeError,
    all_trees,
    canonical_labels,
    compatible,
    contract_nest,
    covering_relations,
    enumerate_nestings,
    increasing_order,
    is_nest,
    linear_tree,
    nesting_partition,
    partition_to_nesting,
    substitute,
    two_leveled_tree,
)

__all__ = [name for name in dir() if not name.startswith("_")]
