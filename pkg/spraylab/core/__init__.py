"""Exact rational scalars, vectors, matrices, flats and position predicates."""

from .rational import Rational, as_rational, format_rational, parse_rational
from .vectors import QMatrix, QVector
from .linalg import (
    LinearSolution,
    canonical_basis,
    determinant,
    inverse,
    is_independent,
    null_space,
    rank,
    rref,
    solve_affine,
    solve_linear,
)
from .affine import (
    AffineSubspace,
    Hyperplane,
    affine_span,
    hyperplane_of,
    orthogonal_project,
)
from .position import (
    WellPlacedVerdict,
    extends_general_position,
    extends_general_position_vectors,
    is_general_position_points,
    is_general_position_vectors,
    is_well_placed,
    point_position_violation,
    vector_position_violation,
)

__all__ = [
    'Rational',
    'as_rational',
    'format_rational',
    'parse_rational',
    'QVector',
    'QMatrix',
    'LinearSolution',
    'canonical_basis',
    'determinant',
    'inverse',
    'is_independent',
    'null_space',
    'rank',
    'rref',
    'solve_affine',
    'solve_linear',
    'AffineSubspace',
    'Hyperplane',
    'affine_span',
    'hyperplane_of',
    'orthogonal_project',
    'WellPlacedVerdict',
    'extends_general_position',
    'extends_general_position_vectors',
    'is_general_position_points',
    'is_general_position_vectors',
    'is_well_placed',
    'point_position_violation',
    'vector_position_violation',
]
