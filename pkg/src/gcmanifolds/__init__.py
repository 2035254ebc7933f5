"""Graph colouring manifolds: Hom complexes Hom(G, K_n), their triangulations and invariants."""

from .errors import InvariantViolation, ResourceLimitError
from .graphs import Graph
from .homcomplex import HomComplex, build_hom
from .homology import HomologyResult, homology_integer
from .simplicial import Answer, SimplicialComplex

__all__ = [
    "Answer",
    "Graph",
    "HomComplex",
    "HomologyResult",
    "InvariantViolation",
    "ResourceLimitError",
    "SimplicialComplex",
    "build_hom",
    "homology_integer",
]
