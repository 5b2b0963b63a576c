"""Graph coverings, chaotic extensions of chain-transitive systems, and
finite-resolution verification of their dynamics."""

from .address import Address, ImplicitTower, ThreadPrefix
from .anchors import AnchorData, AnchorError, select_lexmin_families
from .covering import (CoveringSequence, GraphHom, check_bidirectional,
                       check_edge_surjective, check_homomorphism,
                       check_plus_directional, compose, identity_hom,
                       validate_covering)
from .embed import (EmbeddingLevel, EmbeddingTower, build_embedding,
                    build_level, select_anchor_threads, verify_construction)
from .fileio import CoveringParseError, format_covering, format_dot, parse_covering
from .graphs import (DirectedGraph, Walk, concat, edge_covering_walk,
                     is_irreducible, singleton_graph, subwalk,
                     validate_surjective)
from .providers import (BudgetExceededError, CoveringProvider,
                        DepthExceededError, ExplicitCoveringProvider,
                        FixedPointProvider, OdometerProvider, make_generator)
from .report import WitnessReport, parse_report

__all__ = [
    "Address", "AnchorData", "AnchorError", "BudgetExceededError",
    "CoveringParseError", "CoveringProvider", "CoveringSequence",
    "DepthExceededError", "DirectedGraph", "EmbeddingLevel", "EmbeddingTower",
    "ExplicitCoveringProvider", "FixedPointProvider", "GraphHom",
    "ImplicitTower", "OdometerProvider", "ThreadPrefix", "Walk",
    "WitnessReport", "build_embedding", "build_level", "check_bidirectional",
    "check_edge_surjective", "check_homomorphism", "check_plus_directional",
    "compose", "concat", "edge_covering_walk", "format_covering",
    "format_dot", "identity_hom", "is_irreducible", "make_generator",
    "parse_covering", "parse_report", "select_anchor_threads",
    "select_lexmin_families", "singleton_graph", "subwalk",
    "validate_covering", "validate_surjective", "verify_construction",
]
