"""chowcert: exact-arithmetic Chow-polystability certificates for lattice polytopes."""

from .polytope import LatticePolytope, Facet, VertexCone, build_polytope

__all__ = ["LatticePolytope", "Facet", "VertexCone", "build_polytope"]

__version__ = "0.1.0"
