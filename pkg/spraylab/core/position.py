"""General position and well-placed predicates.

All checks enumerate subsets exactly; they are meant for desk-scale inputs
(a few dozen points). Generators use the incremental variants, which only
look at subsets containing the newest element.
"""

import logging
from dataclasses import dataclass
from itertools import combinations
from typing import Optional, Sequence, Tuple

from ..exceptions import (
    DimensionMismatch,
    DuplicatePoint,
    PointOutsideAmbient,
    ZeroVector,
)
from .affine import AffineSubspace, Hyperplane, affine_span, hyperplane_of
from .linalg import rank
from .vectors import QMatrix, QVector

logger = logging.getLogger(__name__)


def _vectors_independent(vs: Sequence[QVector]) -> bool:
    return rank(QMatrix(tuple(vs))) == len(vs)


def _points_independent(ps: Sequence[QVector]) -> bool:
    if len(ps) <= 1:
        return True
    return _vectors_independent([p - ps[0] for p in ps[1:]])


def _first_dependent_subset(
    ps: Sequence[QVector], max_size: int
) -> Optional[Tuple[int, ...]]:
    for k in range(2, max_size + 1):
        for subset in combinations(range(len(ps)), k):
            if not _points_independent([ps[i] for i in subset]):
                return subset
    return None


def _check_distinct(ps: Sequence[QVector]):
    seen = {}
    for i, p in enumerate(ps):
        if p in seen:
            raise DuplicatePoint(
                f"Points {seen[p]} and {i} coincide: {p}", indices=(seen[p], i)
            )
        seen[p] = i


# --------------------------
# Vectors
# --------------------------
def vector_position_violation(
    vs: Sequence[QVector], d: int
) -> Optional[Tuple[int, ...]]:
    """
    First subset of size min(|vs|, d) that is linearly dependent.

    Returns:
        Indices of the violating subset, or None when the vectors are in
        general position
    """
    for i, v in enumerate(vs):
        if v.dim != d:
            raise DimensionMismatch(f"Vector {i} has dimension {v.dim}, expected {d}")
        if v.is_zero():
            raise ZeroVector(f"Vector {i} is zero")
    k = min(len(vs), d)
    for subset in combinations(range(len(vs)), k):
        if not _vectors_independent([vs[i] for i in subset]):
            return subset
    return None


def is_general_position_vectors(vs: Sequence[QVector], d: int) -> bool:
    """Every subset of size <= d is linearly independent."""
    return vector_position_violation(vs, d) is None


def extends_general_position_vectors(
    vs: Sequence[QVector], candidate: QVector, d: int
) -> bool:
    """Whether vs + [candidate] stays in general position, given vs already is."""
    if candidate.is_zero():
        return False
    k = min(len(vs) + 1, d)
    for subset in combinations(vs, k - 1):
        if not _vectors_independent(list(subset) + [candidate]):
            return False
    return True


# --------------------------
# Points
# --------------------------
def point_position_violation(
    ps: Sequence[QVector], ambient: AffineSubspace
) -> Optional[Tuple[int, ...]]:
    """
    First subset of size min(|ps|, dim(ambient)+1) that is affinely dependent.

    Raises:
        PointOutsideAmbient: If a point is not in the ambient flat
        DuplicatePoint: If two points coincide
    """
    for i, p in enumerate(ps):
        if not ambient.contains(p):
            raise PointOutsideAmbient(f"Point {i} {p} is not in the ambient subspace")
    _check_distinct(ps)
    k = min(len(ps), ambient.dim + 1)
    for subset in combinations(range(len(ps)), k):
        if not _points_independent([ps[i] for i in subset]):
            return subset
    return None


def is_general_position_points(ps: Sequence[QVector], ambient: AffineSubspace) -> bool:
    """Every (k+1)-subset with k <= dim(ambient) spans a k-flat."""
    return point_position_violation(ps, ambient) is None


def extends_general_position(
    ps: Sequence[QVector], candidate: QVector, ambient_dim: int
) -> bool:
    """Incremental check: only subsets containing the candidate are examined."""
    if candidate in ps:
        return False
    k = min(len(ps) + 1, ambient_dim + 1)
    for subset in combinations(ps, k - 1):
        if not _points_independent(list(subset) + [candidate]):
            return False
    return True


@dataclass(frozen=True)
class WellPlacedVerdict:
    """Outcome of a well-placed check; truthy when the points are well placed."""

    well_placed: bool
    hyperplane: Optional[Hyperplane] = None
    violation: Optional[Tuple[int, ...]] = None

    def __bool__(self) -> bool:
        return self.well_placed


def is_well_placed(ps: Sequence[QVector], d: int) -> WellPlacedVerdict:
    """
    Check that the points lie in one hyperplane and are in general position in it.

    Args:
        ps: Points of Q^d, pairwise distinct
        d: Ambient dimension

    Returns:
        Verdict with the common hyperplane when |ps| >= d (it is unique then)
    """
    for i, p in enumerate(ps):
        if p.dim != d:
            raise DimensionMismatch(f"Point {i} has dimension {p.dim}, expected {d}")
    _check_distinct(ps)
    if not ps:
        return WellPlacedVerdict(True)
    span = affine_span(ps)
    if span.dim > d - 1:
        return WellPlacedVerdict(False, violation=tuple(range(len(ps))))
    if len(ps) <= d:
        if span.dim != len(ps) - 1:
            violation = _first_dependent_subset(ps, len(ps))
            return WellPlacedVerdict(False, violation=violation)
        hyperplane = hyperplane_of(span) if len(ps) == d else None
        return WellPlacedVerdict(True, hyperplane=hyperplane)
    if span.dim < d - 1:
        # more than d points inside a lower flat: some d of them are dependent
        return WellPlacedVerdict(False, violation=_first_dependent_subset(ps, d))
    violation = point_position_violation(ps, span)
    if violation is not None:
        return WellPlacedVerdict(False, violation=violation)
    return WellPlacedVerdict(True, hyperplane=hyperplane_of(span))
