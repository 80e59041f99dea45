"""Finite ultrametric spaces, their representing trees and extremal properties."""

from .constructions import (
    RealizationResult,
    enumerate_representing_shapes,
    enumerate_rooted_trees,
    hamiltonian_cardinality,
    label_tree,
    min_cardinality,
    random_space,
    realizable_as_representing_tree,
    realize_hamiltonian,
    realize_min,
    realize_sphere,
)
from .core import Ball, UltraSpace, all_balls, ball, hausdorff, spectrum, subspace, validate
from .errors import EquivalenceViolation, ParseError, UltrametricError
from .extremal import (
    PropsReport,
    check_bounds,
    check_chain_balls,
    check_class_U,
    check_injective_internal_labels,
    check_no_equilateral,
    check_sphere_decomposable,
    check_strictly_n_ary,
    check_tsi,
    props_report,
)
from .formats import emit_dot, emit_matrix, emit_sexpr, parse_matrix, parse_tree
from .graphs import diametrical_graph, level_graph, multipartite_parts
from .morphisms import (
    exists_ball_preserving_bijection,
    is_isometric,
    is_weakly_similar,
    labeled_code,
    shape_code,
    verify_witness,
)
from .tree import (
    LabeledRootedTree,
    RootedTree,
    ballean,
    build_representing_tree,
    hausdorff_ballean_space,
    internal_subtree,
    iterate_ballean,
    node_ultrametric,
    space_from_tree,
)

__version__ = "0.1.0"
