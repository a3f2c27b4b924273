"""Seeded random instances for the verification suites and synthetic CLI runs."""

import logging
from fractions import Fraction
from typing import List, Optional

import numpy as np

from . import config
from .core.affine import AffineSubspace
from .core.position import extends_general_position
from .core.vectors import QVector
from .duality.centers import CenterConfig, HPoint
from .exceptions import InputError, InvariantViolation

logger = logging.getLogger(__name__)


def make_rng(seed: Optional[int] = None) -> np.random.Generator:
    return np.random.default_rng(config.resolve_seed(seed) if seed is None else seed)


def random_rational(
    rng: np.random.Generator,
    coord_range: Optional[int] = None,
    max_denominator: Optional[int] = None,
    positive: bool = False,
) -> Fraction:
    """A rational num/den with |num| <= coord_range and 1 <= den <= max_denominator."""
    coord_range = config.RANDOM["COORD_RANGE"] if coord_range is None else coord_range
    if max_denominator is None:
        max_denominator = config.RANDOM["MAX_DENOMINATOR"]
    low = 1 if positive else -coord_range
    num = int(rng.integers(low, coord_range + 1))
    den = int(rng.integers(1, max_denominator + 1))
    return Fraction(num, den)


def random_vector(rng: np.random.Generator, d: int, **kwargs) -> QVector:
    return QVector(tuple(random_rational(rng, **kwargs) for _ in range(d)))


def random_general_position_points(
    rng: np.random.Generator, n: int, d: int, **kwargs
) -> List[QVector]:
    """n points of Q^d in general position, drawn one at a time."""
    points: List[QVector] = []
    rejections = 0
    while len(points) < n:
        candidate = random_vector(rng, d, **kwargs)
        if extends_general_position(points, candidate, d):
            points.append(candidate)
            continue
        rejections += 1
        if rejections > config.RANDOM["MAX_REJECTIONS"]:
            raise InvariantViolation(
                f"Too many rejections drawing {n} points in general position in Q^{d}"
            )
    return points


def random_well_placed_centers(
    rng: np.random.Generator, n: int, d: int, **kwargs
) -> List[QVector]:
    """n centers on the base hyperplane x_d = 0, in general position inside it."""
    if d < 2:
        raise InputError("Well-placed centers need d >= 2")
    base = random_general_position_points(rng, n, d - 1, **kwargs)
    return [p.extend(0) for p in base]


def random_center_config(
    rng: np.random.Generator, d: int, n_extra: int = 0, **kwargs
) -> CenterConfig:
    centers = random_well_placed_centers(rng, d + n_extra, d, **kwargs)
    return CenterConfig(d, tuple(centers[:d]), tuple(centers[d:]))


def random_dependent_points(
    rng: np.random.Generator, d: int, span_dim: int, n: int, **kwargs
) -> List[QVector]:
    """
    n distinct points spanning a random span_dim-flat of Q^d.

    With n > span_dim + 1 the points are never in general position.
    """
    if not 0 <= span_dim <= d:
        raise InputError(f"span_dim must be in 0..{d}")
    if n < span_dim + 1 or (span_dim == 0 and n > 1):
        raise InputError(f"{n} distinct points cannot span a {span_dim}-flat")
    for _ in range(config.RANDOM["MAX_REJECTIONS"]):
        base = random_vector(rng, d, **kwargs)
        directions = [random_vector(rng, d, **kwargs) for _ in range(span_dim)]
        try:
            flat = AffineSubspace(base, tuple(directions))
        except InputError:
            continue
        points = [base + v for v in [QVector.zero(d)] + directions]
        while len(points) < n:
            coefficients = [
                random_rational(rng, coord_range=3, max_denominator=2)
                for _ in range(span_dim)
            ]
            p = base
            for c, v in zip(coefficients, flat.directions):
                p = p + v * c
            if p not in points:
                points.append(p)
        order = rng.permutation(n)
        return [points[i] for i in order]
    raise InvariantViolation("Could not draw independent directions")


def random_hpoint(rng: np.random.Generator, d: int, **kwargs) -> HPoint:
    """A point of the open upper half-space with rational base and height_sq."""
    return HPoint(
        random_vector(rng, d - 1, **kwargs), random_rational(rng, positive=True)
    )


def random_points_on_sphere_image(
    rng: np.random.Generator, center: QVector, quadrance: Fraction, n: int, d: int
) -> List[HPoint]:
    """
    n upper points at quadrance rho from a base-hyperplane center.

    A rational base offset w with |w|^2 < rho is drawn and the height is set
    to height_sq = rho - |w|^2.
    """
    c = center.head(d - 1) if center.dim == d else center
    points: List[HPoint] = []
    for _ in range(config.RANDOM["MAX_REJECTIONS"]):
        if len(points) == n:
            break
        w = random_vector(rng, d - 1, coord_range=4, max_denominator=4)
        height_sq = quadrance - w.quadrance()
        if height_sq > 0:
            points.append(HPoint(c + w, height_sq))
    if len(points) < n:
        raise InvariantViolation(
            f"Could not draw {n} points on the sphere of quadrance {quadrance}"
        )
    return points


def random_distinct_points(
    rng: np.random.Generator, n: int, d: int, **kwargs
) -> List[QVector]:
    seen = set()
    points: List[QVector] = []
    for _ in range(n * 10 + config.RANDOM["MAX_REJECTIONS"]):
        if len(points) == n:
            return points
        p = random_vector(rng, d, **kwargs)
        if p not in seen:
            seen.add(p)
            points.append(p)
    if len(points) == n:
        return points
    raise InvariantViolation(f"Could not draw {n} distinct points in Q^{d}")
