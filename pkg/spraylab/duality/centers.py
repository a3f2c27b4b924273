"""Center configurations on the base hyperplane and their dual directions.

All centers lie on the base hyperplane x_d = 0. A center c is stored as a
d-vector with last coordinate 0; its first d-1 coordinates are written c'.
For an extra center q the dependency space U(q) is the null space of the
(d-1) x d matrix with columns p_i - q, where p_i are the basis centers.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Dict, List, Optional, Sequence, Tuple

from .. import config
from ..core.linalg import inverse, null_space
from ..core.position import is_general_position_vectors, is_well_placed
from ..core.rational import RationalLike, as_rational
from ..core.vectors import QMatrix, QVector
from ..exceptions import (
    CentersNotWellPlaced,
    DimensionMismatch,
    DuplicatePoint,
    GeneralPositionCertificateFailed,
    InputError,
    NotInUSpace,
    ZeroVector,
)

logger = logging.getLogger(__name__)


def lift_center(c: QVector, d: int) -> QVector:
    """Accept a center as a d-vector on x_d = 0 or as its d-1 base coordinates."""
    if c.dim == d - 1:
        return c.extend(0)
    if c.dim != d:
        raise DimensionMismatch(f"Center {c} must have dimension {d} or {d - 1}")
    if c[d - 1] != 0:
        raise InputError(f"Center {c} is not on the base hyperplane x_{d} = 0")
    return c


@dataclass(frozen=True)
class CenterConfig:
    """d basis centers, well placed on the base hyperplane, plus extra centers."""

    d: int
    basis_centers: Tuple[QVector, ...]
    extra_centers: Tuple[QVector, ...] = ()

    def __post_init__(self):
        if self.d < 2:
            raise InputError("Center configurations need d >= 2")
        basis = tuple(lift_center(c, self.d) for c in self.basis_centers)
        extra = tuple(lift_center(c, self.d) for c in self.extra_centers)
        if len(basis) != self.d:
            raise InputError(f"Need exactly {self.d} basis centers, got {len(basis)}")
        seen = {}
        for i, c in enumerate(basis + extra):
            if c in seen:
                raise DuplicatePoint(
                    f"Centers {seen[c]} and {i} coincide", (seen[c], i)
                )
            seen[c] = i
        if not is_well_placed(list(basis), self.d):
            raise CentersNotWellPlaced(
                "Basis centers are not in general position on the base hyperplane"
            )
        object.__setattr__(self, "basis_centers", basis)
        object.__setattr__(self, "extra_centers", extra)

    @property
    def centers(self) -> Tuple[QVector, ...]:
        """Basis centers followed by extra centers."""
        return self.basis_centers + self.extra_centers

    @property
    def basis_points(self) -> Tuple[QVector, ...]:
        """The p_i: basis centers as points of Q^{d-1}."""
        return tuple(c.head(self.d - 1) for c in self.basis_centers)

    def base_of(self, c: QVector) -> QVector:
        return lift_center(c, self.d).head(self.d - 1)

    @cached_property
    def difference_inverse(self) -> QMatrix:
        """Inverse of the matrix with rows 2 (p_i - p_1), i = 2..d."""
        p = self.basis_points
        rows = QMatrix(tuple((p[i] - p[0]) * 2 for i in range(1, self.d)))
        return inverse(rows)

    def with_extra(self, extra: Sequence[QVector]) -> "CenterConfig":
        return CenterConfig(self.d, self.basis_centers, tuple(extra))


@dataclass(frozen=True)
class HPoint:
    """
    A point (base, t) of the closed upper half-space, stored as (base, t^2).

    ``lower`` marks the mirror image (base, -t) below the base hyperplane; it
    has the same distance to every center.
    """

    base: QVector
    height_sq: Fraction
    lower: bool = False

    def __post_init__(self):
        object.__setattr__(self, "height_sq", as_rational(self.height_sq))
        if self.height_sq < 0:
            raise InputError(f"height_sq must be >= 0, got {self.height_sq}")

    @classmethod
    def from_point(cls, x: QVector) -> "HPoint":
        """A rational point of Q^d, read as (base, height)."""
        height = x[x.dim - 1]
        return cls(x.head(x.dim - 1), height * height, lower=height < 0)

    @property
    def dim(self) -> int:
        return self.base.dim + 1

    @property
    def is_boundary(self) -> bool:
        return self.height_sq == 0

    def reflected(self) -> "HPoint":
        return HPoint(self.base, self.height_sq, lower=not self.lower)

    def upper(self) -> "HPoint":
        return HPoint(self.base, self.height_sq) if self.lower else self

    def distance_sq_to(self, center: QVector) -> Fraction:
        """|x - c|^2 for a center c on the base hyperplane."""
        c = center.head(self.base.dim) if center.dim == self.dim else center
        return self.base.distance_sq(c) + self.height_sq


@dataclass(frozen=True)
class RadiiVector:
    """A vector of squared distances (r_1, ..., r_d)."""

    r: QVector

    def __post_init__(self):
        if any(x < 0 for x in self.r):
            raise InputError(f"Squared distances cannot be negative: {self.r}")

    @property
    def dim(self) -> int:
        return self.r.dim


@dataclass(frozen=True)
class DualDirection:
    """(u, b, c) with u_1|x-p_1|^2 + ... + u_d|x-p_d|^2 + b|x-q|^2 + c = 0 for all x."""

    u: QVector
    b: Fraction
    c: Fraction
    extra_index: Optional[int] = None

    def value(self, r: QVector, k: RationalLike) -> Fraction:
        """u . r + b k + c: zero exactly on L(u, k)."""
        return self.u.dot(r) + self.b * as_rational(k) + self.c


def _dependency_matrix(cfg: CenterConfig, q: QVector) -> QMatrix:
    q_base = cfg.base_of(q)
    return QMatrix.from_columns([p - q_base for p in cfg.basis_points])


def u_space(cfg: CenterConfig, q: QVector) -> List[QVector]:
    """
    Basis of U(q) = {u : u_1 (p_1 - q) + ... + u_d (p_d - q) = 0}.

    Args:
        cfg: Center configuration
        q: Point of the base hyperplane (d-vector with x_d = 0, or d-1 coordinates)

    Returns:
        Reduced echelon basis of U(q), at least one vector
    """
    return null_space(_dependency_matrix(cfg, q))


def ivan_coefficients(
    cfg: CenterConfig, q: QVector, u: QVector, extra_index: Optional[int] = None
) -> DualDirection:
    """
    Coefficients b = -sum(u_i) and c = -sum(u_i (|p_i|^2 - |q|^2)) for u in U(q).

    Raises:
        NotInUSpace: If u does not satisfy the dependency equation
    """
    if u.dim != cfg.d:
        raise DimensionMismatch(f"u must have dimension {cfg.d}")
    if u.is_zero():
        raise ZeroVector("u must be nonzero")
    if not _dependency_matrix(cfg, q).apply(u).is_zero():
        raise NotInUSpace(f"{u} is not in U({q})")
    q_base = cfg.base_of(q)
    b = -sum(u, Fraction(0))
    c = -sum(
        (
            ui * (p.quadrance() - q_base.quadrance())
            for ui, p in zip(u, cfg.basis_points)
        ),
        Fraction(0),
    )
    return DualDirection(u, b, c, extra_index)


def ivan_residual(
    cfg: CenterConfig, dd: DualDirection, q: QVector, x: QVector
) -> Fraction:
    """The left-hand side of the identity at a point x of the base hyperplane."""
    x_base = cfg.base_of(x) if x.dim == cfg.d else x
    q_base = cfg.base_of(q)
    total = sum(
        (ui * x_base.distance_sq(p) for ui, p in zip(dd.u, cfg.basis_points)),
        Fraction(0),
    )
    return total + dd.b * x_base.distance_sq(q_base) + dd.c


def normalize_direction(u: QVector) -> QVector:
    """Scale u so its coordinates sum to 1, or its first nonzero coordinate is 1."""
    total = sum(u, Fraction(0))
    if total != 0:
        return u / total
    pivot = next((x for x in u if x != 0), None)
    if pivot is None:
        raise ZeroVector("Cannot normalize the zero vector")
    return u / pivot


def extra_direction(cfg: CenterConfig, q: QVector) -> QVector:
    """The normalized direction of U(q) for an extra center q."""
    basis = u_space(cfg, q)
    if len(basis) != 1:
        raise CentersNotWellPlaced(f"U({q}) has dimension {len(basis)}, expected 1")
    return normalize_direction(basis[0])


def directions_from_centers(cfg: CenterConfig) -> List[QVector]:
    """
    Directions dual to all centers: e_1..e_d, then one u_j per extra center.

    The output is certified to be in general position.

    Raises:
        CentersNotWellPlaced: If the centers are not well placed together
        GeneralPositionCertificateFailed: If the certificate check fails
    """
    verdict = is_well_placed(list(cfg.centers), cfg.d)
    if not verdict:
        raise CentersNotWellPlaced(
            f"Centers are not well placed (violating subset {verdict.violation})"
        )
    directions = [QVector.unit(cfg.d, i) for i in range(cfg.d)]
    directions += [extra_direction(cfg, q) for q in cfg.extra_centers]
    if not is_general_position_vectors(directions, cfg.d):
        raise GeneralPositionCertificateFailed(
            "Directions derived from well-placed centers are dependent"
        )
    logger.debug(f"Certified {len(directions)} directions in general position")
    return directions


class CenterStream:
    """
    Infinite stream of well-placed centers on the moment curve.

    The n-th center is (t, t^2, ..., t^{d-1}, 0) with t = start + n - 1. The
    first d centers are the basis centers. Any d points of the curve are
    affinely independent, so every prefix is well placed.
    """

    def __init__(self, d: int, start: Optional[int] = None):
        if d < 2:
            raise InputError("Center streams need d >= 2")
        self.d = d
        self.start = config.DRIZZLE["CENTER_CURVE_START"] if start is None else start
        self._basis = CenterConfig(d, tuple(self._curve(n) for n in range(1, d + 1)))
        self._directions: Dict[int, QVector] = {}

    def _curve(self, n: int) -> QVector:
        t = Fraction(self.start + n - 1)
        return QVector(tuple(t ** k for k in range(1, self.d)) + (Fraction(0),))

    @property
    def basis(self) -> CenterConfig:
        return self._basis

    def center(self, n: int) -> QVector:
        """The n-th center, n >= 1."""
        if n < 1:
            raise InputError("Center indices start at 1")
        return self._curve(n)

    def direction(self, n: int) -> QVector:
        """e_n for n <= d, otherwise the normalized direction of the n-th center."""
        if n not in self._directions:
            if n <= self.d:
                self._directions[n] = QVector.unit(self.d, n - 1)
            else:
                self._directions[n] = extra_direction(self._basis, self.center(n))
        return self._directions[n]

    def config(self, n_centers: int) -> CenterConfig:
        """Configuration holding the first n_centers centers (at least d)."""
        n_centers = max(n_centers, self.d)
        extra = tuple(self._curve(n) for n in range(self.d + 1, n_centers + 1))
        return self._basis.with_extra(extra)
