"""Stability, L-invariant and embedding obstructions for one-dimensional
tiling spaces and codimension-one attractors."""

__version__ = "0.1.0"

from .errors import (
    ConsistencyError,
    DimensionError,
    DomainError,
    InvalidInputError,
    MembershipError,
    OutOfHypothesisError,
    ParseError,
    PreconditionError,
    TileShapeError,
)
from .freegroup import Alphabet, FreeEndo, Word, abelianization, apply, compose, iterate, reduce
from .intlat import IntMatrix, Lattice, determinant, smith_normal_form
from .prostab import Verdict, abelian_tower, image_tower, is_automorphism, lim1_verdict
from .stallings import CoreGraph, from_generators, rewrite_in_basis, spanning_basis
from .substitution import Substitution, forces_border, gluing_graph, incidence_matrix, is_primitive
from .verdicts import (
    LVerdict,
    Stability,
    SurfaceEmbedding,
    analyze_endo,
    analyze_substitution,
    h1_presentation,
    projection_check,
    torus_minus_points,
)
