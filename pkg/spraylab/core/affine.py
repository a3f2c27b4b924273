"""Affine subspaces and hyperplanes of Q^d."""

import logging
from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from typing import Optional, Sequence, Tuple, Union

from ..exceptions import DependentVectors, DimensionMismatch, InputError, ZeroVector
from .linalg import canonical_basis, is_independent, null_space, rank, solve_linear
from .rational import RationalLike, as_rational
from .vectors import QMatrix, QVector

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Hyperplane:
    """The set {x : normal . x = offset}."""

    normal: QVector
    offset: Fraction

    def __post_init__(self):
        if self.normal.is_zero():
            raise ZeroVector("Hyperplane normal must be nonzero")
        object.__setattr__(self, "offset", as_rational(self.offset))

    @classmethod
    def through(cls, point: QVector, normal: QVector) -> "Hyperplane":
        """H_u(p): the hyperplane orthogonal to u passing through p."""
        return cls(normal, normal.dot(point))

    @property
    def ambient_dim(self) -> int:
        return self.normal.dim

    def value(self, x: QVector) -> Fraction:
        """normal . x - offset (zero exactly on the hyperplane)."""
        return self.normal.dot(x) - self.offset

    def contains(self, x: QVector) -> bool:
        return self.value(x) == 0

    def distance_sq(self, x: QVector) -> Fraction:
        """Exact squared distance from x to the hyperplane."""
        v = self.value(x)
        return v * v / self.normal.quadrance()

    def project(self, x: QVector) -> QVector:
        return x - self.normal * (self.value(x) / self.normal.quadrance())

    def as_subspace(self) -> "AffineSubspace":
        d = self.ambient_dim
        pivot = next(i for i, c in enumerate(self.normal) if c != 0)
        base = QVector.unit(d, pivot) * (self.offset / self.normal[pivot])
        directions = null_space(QMatrix((self.normal,)))
        return AffineSubspace(base, tuple(directions))


@dataclass(frozen=True)
class AffineSubspace:
    """The flat base + Span(directions); directions are linearly independent."""

    base: QVector
    directions: Tuple[QVector, ...] = ()

    def __post_init__(self):
        directions = tuple(self.directions)
        for v in directions:
            if v.dim != self.base.dim:
                raise DimensionMismatch(
                    "Directions must live in the same space as the base"
                )
        if not is_independent(directions):
            raise DependentVectors(
                "Directions of an affine subspace must be independent"
            )
        object.__setattr__(self, "directions", directions)

    @classmethod
    def full(cls, d: int) -> "AffineSubspace":
        """The whole space Q^d."""
        return _full_space(d)

    @classmethod
    def point(cls, p: QVector) -> "AffineSubspace":
        return cls(p, ())

    @property
    def dim(self) -> int:
        return len(self.directions)

    @property
    def ambient_dim(self) -> int:
        return self.base.dim

    def contains(self, x: QVector) -> bool:
        if x.dim != self.ambient_dim:
            return False
        if self.dim == self.ambient_dim:
            return True
        if not self.directions:
            return x == self.base
        return rank(QMatrix(self.directions + (x - self.base,))) == self.dim

    def contains_direction(self, v: QVector) -> bool:
        if v.is_zero() or self.dim == self.ambient_dim:
            return True
        if not self.directions:
            return False
        return rank(QMatrix(self.directions + (v,))) == self.dim

    def project(self, x: QVector) -> QVector:
        """Orthogonal projection: solve the Gram system for the coefficients."""
        if not self.directions:
            return self.base
        offset = x - self.base
        gram = QMatrix.from_rows(
            [[a.dot(b) for b in self.directions] for a in self.directions]
        )
        rhs = QVector(tuple(a.dot(offset) for a in self.directions))
        coeffs = solve_linear(gram, rhs)
        result = self.base
        for c, v in zip(coeffs, self.directions):
            result = result + v * c
        return result

    def distance_sq(self, x: QVector) -> Fraction:
        return x.distance_sq(self.project(x))

    def same_as(self, other: "AffineSubspace") -> bool:
        """Set equality of the two flats."""
        return (
            self.ambient_dim == other.ambient_dim
            and self.dim == other.dim
            and self.contains(other.base)
            and all(self.contains_direction(v) for v in other.directions)
        )

    def intersect_hyperplane(
        self, h: Hyperplane, through: Optional[QVector] = None
    ) -> "AffineSubspace":
        """
        The flat self ∩ h, for a hyperplane h whose normal lies in this flat.

        Args:
            h: Hyperplane with normal in the direction space of this flat
            through: A known point of the intersection, if available

        Returns:
            The intersection, one dimension lower
        """
        if not self.contains_direction(h.normal):
            raise InputError(
                "Hyperplane normal must lie in the direction space of the flat"
            )
        if through is None:
            through = h.project(self.base)
        along_normal = QVector(tuple(h.normal.dot(v) for v in self.directions))
        coefficients = null_space(QMatrix((along_normal,)))
        new_dirs = []
        for alpha in coefficients:
            w = QVector.zero(self.ambient_dim)
            for a, v in zip(alpha, self.directions):
                w = w + v * a
            new_dirs.append(w)
        return AffineSubspace(through, tuple(canonical_basis(new_dirs)))

    def orthogonal_to(self, other: "AffineSubspace") -> bool:
        """Whether every direction of self is orthogonal to every direction of other."""
        return all(a.dot(b) == 0 for a in self.directions for b in other.directions)


def orthogonal_project(
    x: QVector, target: Union[AffineSubspace, Hyperplane]
) -> QVector:
    """The closest point of target to x."""
    if x.dim != target.ambient_dim:
        raise DimensionMismatch(
            f"Point of dim {x.dim} cannot be projected into dim {target.ambient_dim}"
        )
    return target.project(x)


def affine_span(points: Sequence[QVector]) -> AffineSubspace:
    """p_1 + Span{q - p_1 : q in points}."""
    if not points:
        raise InputError("affine_span needs at least one point")
    base = points[0]
    differences = [p - base for p in points[1:] if p != base]
    return AffineSubspace(base, tuple(canonical_basis(differences)))


def hyperplane_of(subspace: AffineSubspace) -> Hyperplane:
    """The hyperplane equal to a flat of codimension one."""
    if subspace.dim != subspace.ambient_dim - 1:
        raise InputError(
            f"A {subspace.dim}-flat in dimension {subspace.ambient_dim} "
            "is not a hyperplane"
        )
    if subspace.directions:
        (normal,) = null_space(QMatrix(subspace.directions))
    else:
        normal = QVector.unit(1, 0)
    return Hyperplane.through(subspace.base, normal)


def hyperplane_from_values(
    normal: Sequence[RationalLike], offset: RationalLike
) -> Hyperplane:
    return Hyperplane(QVector(tuple(normal)), as_rational(offset))


@lru_cache(maxsize=None)
def _full_space(d: int) -> AffineSubspace:
    return AffineSubspace(QVector.zero(d), tuple(QVector.unit(d, i) for i in range(d)))
