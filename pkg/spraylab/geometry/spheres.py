"""Sphere intersection calculus.

A sphere is stored as (ambient flat, center, quadrance) where the quadrance is
the signed squared radius: negative means empty, zero means the single point
{center}. No square root is ever taken, so every operation stays in Q.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from ..core.affine import AffineSubspace, Hyperplane, affine_span
from ..core.linalg import canonical_basis, solve_affine
from ..core.position import is_general_position_points
from ..core.rational import RationalLike, as_rational
from ..core.vectors import QMatrix, QVector
from ..exceptions import (
    CenterNotInSpan,
    CentersNotGeneralPosition,
    ConcentricError,
    DimensionMismatch,
    DuplicatePoint,
    InputError,
    NoSolution,
    PointOutsideAmbient,
    PointsActuallyInGeneralPosition,
    TooManyCenters,
    TooManySpheres,
    UnsatisfiableWitness,
)

logger = logging.getLogger(__name__)


class SphereKind(str, Enum):
    EMPTY = "Empty"
    POINT = "Point"
    PAIR_OF_POINTS = "PairOfPoints"
    INFINITE = "Infinite"

    @property
    def is_finite(self) -> bool:
        return self is not SphereKind.INFINITE


@dataclass(frozen=True)
class Sphere:
    """The set {x in ambient : |x - center|^2 = quadrance}."""

    ambient: AffineSubspace
    center: QVector
    quadrance: Fraction

    def __post_init__(self):
        object.__setattr__(self, "quadrance", as_rational(self.quadrance))
        if not self.ambient.contains(self.center):
            raise PointOutsideAmbient(
                f"Sphere center {self.center} is not in its ambient flat"
            )

    @classmethod
    def in_space(cls, center: QVector, quadrance: RationalLike) -> "Sphere":
        """Sphere of the whole space Q^d."""
        return cls(AffineSubspace.full(center.dim), center, as_rational(quadrance))

    @property
    def dim(self) -> int:
        """Dimension of the ambient flat."""
        return self.ambient.dim

    @property
    def kind(self) -> SphereKind:
        return classify(self)

    def contains(self, x: QVector) -> bool:
        return point_on_sphere(x, self)


def classify(s: Sphere) -> SphereKind:
    """Empty, Point, PairOfPoints or Infinite, read off sign(q) and dim(ambient)."""
    if s.quadrance < 0:
        return SphereKind.EMPTY
    if s.quadrance == 0 or s.ambient.dim == 0:
        return SphereKind.POINT if s.quadrance == 0 else SphereKind.EMPTY
    if s.ambient.dim == 1:
        return SphereKind.PAIR_OF_POINTS
    return SphereKind.INFINITE


def point_on_sphere(x: QVector, s: Sphere) -> bool:
    return s.ambient.contains(x) and x.distance_sq(s.center) == s.quadrance


def _empty_at(x: QVector) -> Sphere:
    return Sphere(AffineSubspace.point(x), x, Fraction(-1))


def _point_or_empty(x: QVector, others: Sequence[Sphere]) -> Sphere:
    """The intersection of {x} with the other spheres."""
    if all(point_on_sphere(x, s) for s in others):
        return Sphere(AffineSubspace.point(x), x, Fraction(0))
    return _empty_at(x)


def _restrict_hyperplane(ambient: AffineSubspace, h: Hyperplane) -> Hyperplane:
    """
    An equivalent hyperplane whose normal lies in the direction space of ambient.

    Raises:
        InputError: If h is parallel to the ambient flat
    """
    if ambient.contains_direction(h.normal):
        return h
    normal = ambient.project(ambient.base + h.normal) - ambient.base
    if normal.is_zero():
        raise InputError("Hyperplane does not cut the ambient flat")
    offset = h.offset - (h.normal - normal).dot(ambient.base)
    return Hyperplane(normal, offset)


def _cut(s: Sphere, h: Hyperplane, ambient: AffineSubspace) -> Sphere:
    """s ∩ h inside the already computed flat ambient = s.ambient ∩ h."""
    center = h.project(s.center)
    return Sphere(ambient, center, s.quadrance - h.distance_sq(s.center))


def intersect_sphere_hyperplane(s: Sphere, h: Hyperplane) -> Sphere:
    """
    Intersect a sphere with a hyperplane of its ambient flat.

    The result lives in the flat H = ambient ∩ h, is centered at the orthogonal
    projection of the center and has quadrance q - dist^2(center, H).

    Args:
        s: Sphere
        h: Hyperplane cutting s.ambient

    Returns:
        The intersection as a sphere of H
    """
    h = _restrict_hyperplane(s.ambient, h)
    center = h.project(s.center)
    ambient = s.ambient.intersect_hyperplane(h, through=center)
    return Sphere(ambient, center, s.quadrance - h.distance_sq(s.center))


def _pair(s1: Sphere, s2: Sphere) -> Tuple[Hyperplane, Sphere]:
    c1, c2 = s1.center, s2.center
    D = c1.distance_sq(c2)
    t = (D + s1.quadrance - s2.quadrance) / (2 * D)
    center = c1 + (c2 - c1) * t
    quadrance = s1.quadrance - t * t * D
    h = Hyperplane.through(center, c1 - c2)
    ambient = s1.ambient.intersect_hyperplane(h, through=center)
    return h, Sphere(ambient, center, quadrance)


def _check_common_ambient(spheres: Sequence[Sphere]) -> AffineSubspace:
    ambient = spheres[0].ambient
    for i, s in enumerate(spheres[1:], start=1):
        if s.ambient is not ambient and not s.ambient.same_as(ambient):
            raise DimensionMismatch(
                f"Sphere {i} does not share the ambient flat of sphere 0"
            )
    return ambient


def intersect_pair(s1: Sphere, s2: Sphere) -> Tuple[Hyperplane, Sphere]:
    """
    Intersect two spheres with distinct centers.

    With D = |c1 - c2|^2 and t = (D + q1 - q2) / (2D) the intersection is the
    sphere of the hyperplane through c = c1 + t (c2 - c1) orthogonal to
    c1 - c2, with quadrance q1 - t^2 D. A negative quadrance means the spheres
    do not meet.

    Args:
        s1: First sphere, quadrance > 0
        s2: Second sphere in the same ambient flat, quadrance > 0

    Returns:
        (hyperplane, intersection sphere)

    Raises:
        ConcentricError: If the centers coincide
        InputError: If the ambient flat has dimension below 2
    """
    ambient = _check_common_ambient([s1, s2])
    if ambient.dim < 2:
        raise InputError(
            "intersect_pair needs an ambient flat of dimension >= 2, "
            f"got {ambient.dim}"
        )
    if s1.center == s2.center:
        raise ConcentricError(f"Spheres share the center {s1.center}")
    if s1.quadrance <= 0 or s2.quadrance <= 0:
        raise InputError("intersect_pair needs positive quadrances")
    return _pair(s1, s2)


def _chain(spheres: List[Sphere]) -> Sphere:
    current = list(spheres)
    while len(current) > 1:
        for s in current:
            if s.quadrance < 0:
                return _empty_at(s.center)
        degenerate = next((s for s in current if s.quadrance == 0), None)
        if degenerate is not None:
            return _point_or_empty(degenerate.center, current)
        *rest, last_but_one, last = current
        h, pair = _pair(last_but_one, last)
        logger.debug(
            f"Chain stage: {len(current)} spheres, pair quadrance {pair.quadrance}"
        )
        current = [_cut(s, h, pair.ambient) for s in rest] + [pair]
    return current[0]


def intersect_chain(spheres: Sequence[Sphere]) -> Sphere:
    """
    Intersect k <= d spheres whose centers are in general position.

    The last two spheres are intersected first; the hyperplane of that pair
    cuts the remaining spheres, and the induction continues inside it. The
    result lives in a flat of dimension d - (k - 1) orthogonal to the affine
    span of the centers, and its center is the unique common point of the two.

    Args:
        spheres: Spheres sharing one ambient flat

    Returns:
        The intersection sphere

    Raises:
        TooManySpheres: If k exceeds the ambient dimension
        CentersNotGeneralPosition: If the centers are affinely dependent
    """
    if not spheres:
        raise InputError("intersect_chain needs at least one sphere")
    ambient = _check_common_ambient(spheres)
    if len(spheres) > ambient.dim:
        raise TooManySpheres(
            f"{len(spheres)} spheres in a {ambient.dim}-dimensional flat"
        )
    centers = [s.center for s in spheres]
    if not is_general_position_points(centers, ambient):
        raise CentersNotGeneralPosition("Sphere centers are not in general position")
    return _chain(list(spheres))


def intersect_spheres(spheres: Sequence[Sphere]) -> Sphere:
    """
    Intersect any number of spheres with distinct centers.

    Subtracting the first sphere equation from the others leaves a linear
    system whose solution flat L is cut by the first sphere.

    Args:
        spheres: Spheres sharing one ambient flat, pairwise distinct centers

    Returns:
        The intersection as a sphere of L (Empty when L is empty)
    """
    if not spheres:
        raise InputError("intersect_spheres needs at least one sphere")
    ambient = _check_common_ambient(spheres)
    first = spheres[0]
    seen = set()
    for s in spheres:
        if s.center in seen:
            raise ConcentricError(f"Two spheres share the center {s.center}")
        seen.add(s.center)
    if any(s.quadrance < 0 for s in spheres):
        return _empty_at(first.center)
    if len(spheres) == 1:
        return first
    if ambient.dim == 0:
        return _point_or_empty(ambient.base, spheres)
    c1, q1 = first.center, first.quadrance
    rows, rhs = [], []
    for s in spheres[1:]:
        diff = (s.center - c1) * 2
        rows.append([diff.dot(v) for v in ambient.directions])
        rhs.append(
            s.center.quadrance()
            - c1.quadrance()
            - s.quadrance
            + q1
            - diff.dot(ambient.base)
        )
    try:
        solution = solve_affine(QMatrix.from_rows(rows), QVector(tuple(rhs)))
    except NoSolution:
        return _empty_at(c1)
    base = ambient.base
    for alpha, v in zip(solution.point, ambient.directions):
        base = base + v * alpha
    directions = []
    for coefficients in solution.null_basis:
        w = QVector.zero(ambient.ambient_dim)
        for alpha, v in zip(coefficients, ambient.directions):
            w = w + v * alpha
        directions.append(w)
    flat = AffineSubspace(base, tuple(canonical_basis(directions)))
    center = flat.project(c1)
    return Sphere(flat, center, q1 - c1.distance_sq(center))


def sphere_within(inner: Sphere, center: QVector, quadrance: RationalLike) -> bool:
    """
    Whether every point of inner lies on the sphere (center, quadrance).

    Vacuously true for an empty inner sphere. Otherwise the offset between
    the centers must be orthogonal to the inner flat and the quadrances must
    satisfy Q = q + |c - center|^2.
    """
    quadrance = as_rational(quadrance)
    if inner.quadrance < 0:
        return True
    offset = inner.center - center
    if inner.quadrance == 0 or inner.ambient.dim == 0:
        return offset.quadrance() == quadrance
    if any(offset.dot(v) != 0 for v in inner.ambient.directions):
        return False
    return inner.quadrance + offset.quadrance() == quadrance


def enclose_from_dependent_center(
    spheres: Sequence[Sphere], extra_center: QVector
) -> Sphere:
    """
    Sphere around a center of the span K of the chain centers that contains
    the whole chain intersection.

    Args:
        spheres: Chain as accepted by intersect_chain
        extra_center: Point of K distinct from the chain centers

    Returns:
        Sphere centered at extra_center with quadrance |extra_center - c|^2 + q,
        where (c, q) is the chain intersection

    Raises:
        CenterNotInSpan: If extra_center is outside K
    """
    centers = [s.center for s in spheres]
    if extra_center in centers:
        raise DuplicatePoint(
            f"Extra center {extra_center} coincides with a chain center"
        )
    span = affine_span(centers)
    if not span.contains(extra_center):
        raise CenterNotInSpan(
            f"{extra_center} is not in the affine span of the centers"
        )
    chain = intersect_chain(spheres)
    if chain.quadrance < 0:
        logger.debug(
            "Chain intersection is empty; enclosing sphere contains it vacuously"
        )
    quadrance = extra_center.distance_sq(chain.center) + chain.quadrance
    return Sphere(spheres[0].ambient, extra_center, quadrance)


def chain_quadrances(
    centers: Sequence[QVector], seed_quadrance: RationalLike
) -> List[Fraction]:
    """
    Quadrances q_1..q_{k-1} making the chain through centers nondegenerate.

    Each step sets q_{k-1} = q_k + |c_{k-1} - c_k|^2, which places the pair
    intersection at c_k with quadrance q_k, then recurses on the projections of
    the remaining centers into the pair hyperplane. Centers must be affinely
    independent; there is no bound on k relative to the dimension.
    """
    seed = as_rational(seed_quadrance)
    if seed <= 0:
        raise InputError("Seed quadrance must be positive")
    centers = list(centers)
    if len(centers) <= 1:
        return []
    a, b = centers[-2], centers[-1]
    q_a = seed + a.distance_sq(b)
    h = Hyperplane.through(b, a - b)
    projected = [h.project(c) for c in centers[:-2]]
    heights = [h.distance_sq(c) for c in centers[:-2]]
    inner = chain_quadrances(projected + [b], seed)
    return [q + height for q, height in zip(inner, heights)] + [q_a]


def make_nondegenerate_chain(
    centers: Sequence[QVector], seed_quadrance: RationalLike, d: Optional[int] = None
) -> List[Fraction]:
    """
    Quadrances for k < d centers so that the chained intersection is infinite.

    Args:
        centers: c_1..c_k in general position in Q^d
        seed_quadrance: q_k > 0
        d: Ambient dimension (defaults to the dimension of the centers)

    Returns:
        [q_1, ..., q_{k-1}]

    Raises:
        TooManyCenters: If k >= d
    """
    if not centers:
        raise InputError("make_nondegenerate_chain needs at least one center")
    d = centers[0].dim if d is None else d
    if len(centers) >= d:
        raise TooManyCenters(
            f"{len(centers)} centers leave no room for a nondegenerate chain "
            f"in dimension {d}"
        )
    if not is_general_position_points(list(centers), AffineSubspace.full(d)):
        raise CentersNotGeneralPosition("Chain centers are not in general position")
    return chain_quadrances(centers, seed_quadrance)


def _independent_subset(points: Sequence[QVector], size: int) -> List[int]:
    chosen = [0]
    for i in range(1, len(points)):
        if len(chosen) == size:
            break
        if affine_span([points[j] for j in chosen] + [points[i]]).dim == len(chosen):
            chosen.append(i)
    return chosen


def infinite_intersection_witness(
    centers: Sequence[QVector],
    seed_quadrance: RationalLike = 1,
    allow_finite: bool = False,
) -> List[Sphere]:
    """
    Spheres around points not in general position whose intersection is infinite.

    Let K be the affine span of the centers and k = dim K. A nondegenerate
    chain is built on k + 1 affinely independent centers; every other center
    gets the sphere that encloses the chain intersection. The intersection of
    all spheres equals the chain intersection, which has dimension d - k.

    Args:
        centers: Distinct points of Q^d, d >= 2, not in general position
        seed_quadrance: Quadrance of the last chain sphere
        allow_finite: Return the two-point witness when K is a hyperplane

    Returns:
        One sphere per center, in input order

    Raises:
        PointsActuallyInGeneralPosition: If the centers are in general position
        UnsatisfiableWitness: If K is a hyperplane (d - k = 1) and allow_finite
            is False
    """
    if not centers:
        raise InputError("infinite_intersection_witness needs centers")
    d = centers[0].dim
    if d < 2:
        raise InputError("Witnesses need dimension at least 2")
    ambient = AffineSubspace.full(d)
    if is_general_position_points(list(centers), ambient):
        raise PointsActuallyInGeneralPosition("Centers are in general position")
    span = affine_span(list(centers))
    k = span.dim
    if k >= d - 1 and not allow_finite:
        raise UnsatisfiableWitness(
            f"Centers span a {k}-flat in dimension {d}; "
            "any chain through them meets in at most two points"
        )
    chosen = _independent_subset(centers, k + 1)
    chain_centers = [centers[i] for i in chosen]
    quadrances = chain_quadrances(chain_centers, seed_quadrance)
    quadrances.append(as_rational(seed_quadrance))
    chain_spheres = [Sphere(ambient, c, q) for c, q in zip(chain_centers, quadrances)]
    chain = _chain(chain_spheres)
    logger.debug(f"Witness chain on centers {chosen}: {classify(chain).value}")
    by_index = dict(zip(chosen, chain_spheres))
    result = []
    for i, c in enumerate(centers):
        if i in by_index:
            result.append(by_index[i])
        else:
            quadrance = c.distance_sq(chain.center) + chain.quadrance
            result.append(Sphere(ambient, c, quadrance))
    return result
