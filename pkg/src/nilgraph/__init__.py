"""Symmetries of the edge-colored graphs G_n, H_n and their 2-step nilpotent Lie algebras."""
from .automorphism import (
    affine_witness,
    color_permutation_witness,
    enumerate_cpa,
    enumerate_gla,
    gla_witness,
    half_split,
    is_graph_automorphism,
    is_special,
    verify_stabilizer_lemmas,
)
from .graph import (
    DirectedEdgeColoredGraph,
    EdgeColoredGraph,
    build_gn,
    build_hn,
    color_classes,
    is_uniform,
    underlying_undirected,
)
from .groups import (
    PermutationGroup,
    build_dihedral,
    build_holomorph,
    closure,
    identify,
    is_isomorphic,
    orbit,
    stabilizer,
)
from .kernels import BACKEND
from .lie import LieAlgebra2Step, LinearMap, from_graph, gla_image_group

__version__ = "0.1.0"
