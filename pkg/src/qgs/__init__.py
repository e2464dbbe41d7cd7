"""Quantum automorphism algebras of finite graphs, computed exactly."""

from .graph import Graph, builtin_graph, parse_graph
from .ncpoly import NcPoly, parse_poly, format_poly
from .presentation import (Presentation, GeneratorMap, b0_presentation, graph_presentation,
                           quantum_perm_presentation)
from .gbasis import GroebnerBasis, compute_gb

__all__ = [
    "Graph", "builtin_graph", "parse_graph", "NcPoly", "parse_poly", "format_poly",
    "Presentation", "GeneratorMap", "b0_presentation", "graph_presentation",
    "quantum_perm_presentation", "GroebnerBasis", "compute_gb",
]

__version__ = "0.1.0"
