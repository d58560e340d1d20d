"""Bicoset digraphs over finite groups: construction, X-join recognition from
connection sets, and natural automorphism groups checked against brute force."""

__version__ = "0.1.0"

from .constructions import (
    BicosetInstance,
    LabeledBicosetDigraph,
    build_bicoset,
    build_bicoset_graph,
    build_cayley,
    build_coset_digraph,
    build_haar_digraph,
    build_haar_graph,
    core_reduce,
    g_hat,
    join_partition,
    make_instance,
)
from .digraph import (
    Digraph,
    in_neighbors,
    is_irreducible,
    is_natural,
    induced_on_cells,
    is_invariant_partition,
    out_neighbors,
    quotient_digraph,
    twin_partition,
    weakly_connected,
    wreath_with_empty,
    x_join,
)
from .groups import (
    FiniteGroup,
    Subgroup,
    core,
    cyclic,
    dihedral,
    direct_product,
    double_coset,
    double_coset_closure,
    intermediate_subgroups,
    is_double_coset_union,
    left_cosets,
    make_group,
    quotient_group,
    subgroup_generated,
    symmetric,
)
from .partition import Partition
from .perm import PermGroup, perm_group_from_generators
from .recognition import (
    JoinDecomposition,
    NaturalAutGroup,
    check_bipartite_join_equivalences,
    digraph_level_recognize,
    haar_recognize,
    maximal_join_subgroups,
    natural_aut_group,
    recognize,
)
from .search import are_isomorphic, brute_force_aut

__all__ = [
    "BicosetInstance",
    "LabeledBicosetDigraph",
    "build_bicoset",
    "build_bicoset_graph",
    "build_cayley",
    "build_coset_digraph",
    "build_haar_digraph",
    "build_haar_graph",
    "core_reduce",
    "g_hat",
    "join_partition",
    "make_instance",
    "Digraph",
    "in_neighbors",
    "is_irreducible",
    "is_natural",
    "induced_on_cells",
    "is_invariant_partition",
    "out_neighbors",
    "quotient_digraph",
    "twin_partition",
    "weakly_connected",
    "wreath_with_empty",
    "x_join",
    "FiniteGroup",
    "Subgroup",
    "core",
    "cyclic",
    "dihedral",
    "direct_product",
    "double_coset",
    "double_coset_closure",
    "intermediate_subgroups",
    "is_double_coset_union",
    "left_cosets",
    "make_group",
    "quotient_group",
    "subgroup_generated",
    "symmetric",
    "Partition",
    "PermGroup",
    "perm_group_from_generators",
    "JoinDecomposition",
    "NaturalAutGroup",
    "check_bipartite_join_equivalences",
    "digraph_level_recognize",
    "haar_recognize",
    "maximal_join_subgroups",
    "natural_aut_group",
    "recognize",
    "are_isomorphic",
    "brute_force_aut",
]
