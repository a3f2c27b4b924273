"""Greedy drizzle covers and their pullback through Phi.

A part A_k of a hyperplane drizzle meets every hyperplane orthogonal to u_k
in at most one point. Points are assigned one at a time to the least allowed
index k whose hyperplane through the point is still free. The position of
that index among the allowed ones is checked against (m - 1)(d - 1) + 1 for
the m-th point; a larger position raises InvariantViolation.
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Set, Tuple

from tqdm import tqdm

from .. import config
from ..core.vectors import QVector
from ..duality.centers import CenterConfig, CenterStream, HPoint, RadiiVector
from ..duality.transfer import phi, phi_inverse
from ..exceptions import (
    DimensionMismatch,
    DuplicatePoint,
    InputError,
    InvariantViolation,
)
from .assignment import CoverReport, PointAssignment
from .streams import DirectionStream
from .verify import verify_hyperplane_cover, verify_spray_cover

logger = logging.getLogger(__name__)

PARITIES = (None, "even", "odd")


def _part_index(position: int, parity: Optional[str]) -> int:
    """The part index of the position-th allowed index (position >= 1)."""
    if parity == "even":
        return 2 * position
    if parity == "odd":
        return 2 * position - 1
    return position


def greedy_drizzle_assign(
    points: Sequence[QVector],
    dirs: DirectionStream,
    d: int,
    parity: Optional[str] = None,
    progress: Optional[bool] = None,
) -> PointAssignment:
    """
    Assign each point to the least index k whose hyperplane through it is free.

    Args:
        points: Pairwise distinct points of Q^d, in enumeration order
        dirs: Direction stream in general position
        d: Ambient dimension
        parity: Restrict to even ("even") or odd ("odd") part indices
        progress: Force the tqdm bar on or off

    Returns:
        PointAssignment whose every part is a hyperplane drizzle

    Raises:
        DuplicatePoint: If two points coincide
        InvariantViolation: If the m-th point needs a position beyond
            (m - 1)(d - 1) + 1
    """
    if parity not in PARITIES:
        raise InputError(f"parity must be one of {PARITIES}, got {parity!r}")
    if dirs.d != d:
        raise DimensionMismatch(
            f"Direction stream lives in dimension {dirs.d}, expected {d}"
        )
    seen: Dict[QVector, int] = {}
    occupied: Dict[int, Set] = {}
    labels: List[int] = []
    show = config.progress_enabled(len(points), progress)
    for m, p in enumerate(tqdm(points, desc="drizzle", disable=not show)):
        if p.dim != d:
            raise DimensionMismatch(f"Point {m} has dimension {p.dim}, expected {d}")
        if p in seen:
            raise DuplicatePoint(
                f"Points {seen[p]} and {m} coincide: {p}", (seen[p], m)
            )
        seen[p] = m
        position = 1
        while True:
            k = _part_index(position, parity)
            offset = dirs[k].dot(p)
            taken = occupied.setdefault(k, set())
            if offset not in taken:
                taken.add(offset)
                break
            position += 1
        bound = m * (d - 1) + 1
        if position > bound:
            raise InvariantViolation(
                f"Point {m} needed position {position}, "
                f"above the blocking bound {bound}"
            )
        labels.append(k)
    n_parts = max(labels, default=0)
    logger.debug(
        f"Greedy drizzle: {len(points)} points in {n_parts} parts (parity={parity})"
    )
    return PointAssignment(tuple(points), tuple(labels), n_parts)


@dataclass
class PulledBackCover:
    """A spray cover of the upper half-space and its mirror, one center per part."""

    assignment: PointAssignment
    centers: List[QVector]
    report: CoverReport


def pullback_drizzle_cover(
    cfg: CenterConfig,
    assignment: PointAssignment,
    dirs: Optional[Sequence[QVector]] = None,
) -> PulledBackCover:
    """
    Pull a hyperplane drizzle over E^d back to a drizzle cover by spheres.

    Part k is centered at the k-th center of cfg. Points of even parts stay in
    the upper half-space, points of odd parts are reflected below it.

    Args:
        cfg: Centers, at least one per part
        assignment: Radii vectors (points of E^d) with their parts
        dirs: Directions the assignment was built with; when given, the
            spray audit is cross-checked against the hyperplane audit

    Raises:
        NotInE: If an assigned point is not in E^d
        InvariantViolation: If a hyperplane drizzle does not pull back to a drizzle
    """
    if assignment.n_parts > len(cfg.centers):
        raise InputError(
            f"{assignment.n_parts} parts but only {len(cfg.centers)} centers"
        )
    lifted: List[HPoint] = []
    for r, k in assignment:
        x = phi_inverse(cfg, RadiiVector(r))
        lifted.append(x.reflected() if k % 2 == 1 else x)
    pulled = assignment.with_points(lifted)
    centers = list(cfg.centers[: assignment.n_parts])
    report = verify_spray_cover(centers, pulled)
    if (
        dirs is not None
        and not report.is_drizzle
        and verify_hyperplane_cover(assignment, dirs).is_drizzle
    ):
        raise InvariantViolation(
            "A hyperplane drizzle pulled back to a cover that is not a drizzle"
        )
    logger.info(f"Pulled back {len(pulled)} points into {assignment.n_parts} sprays")
    return PulledBackCover(pulled, centers, report)


def drizzle_cover_space(
    points: Sequence[QVector], stream: CenterStream, progress: Optional[bool] = None
) -> PulledBackCover:
    """
    Cover finitely many points of Q^d by drizzles centered on the base hyperplane.

    Points on or above the base hyperplane go to even parts, points below it
    to odd parts. Each class is mapped into E^d (its closure for boundary
    points) and assigned greedily among the directions dual to its centers.

    Returns:
        The cover of the given points, the center of every part and the
        sphere audit
    """
    d = stream.d
    dirs = DirectionStream.from_centers(stream)
    classes: Dict[str, List[Tuple[int, QVector]]] = {"even": [], "odd": []}
    for i, x in enumerate(points):
        if x.dim != d:
            raise DimensionMismatch(f"Point {i} has dimension {x.dim}, expected {d}")
        hp = HPoint.from_point(x)
        radii = phi(stream.basis, hp.upper(), closure=True).r
        classes["odd" if hp.lower else "even"].append((i, radii))

    labels = [0] * len(points)
    for parity, members in classes.items():
        if not members:
            continue
        part = greedy_drizzle_assign(
            [r for _, r in members], dirs, d, parity=parity, progress=progress
        )
        for (i, _), k in zip(members, part.part_of):
            labels[i] = k
    n_parts = max(labels, default=0)
    cover = PointAssignment(tuple(points), tuple(labels), n_parts)
    centers = [stream.center(k) for k in range(1, n_parts + 1)]
    report = verify_spray_cover(centers, cover)
    if not report.is_drizzle:
        raise InvariantViolation(
            f"Space cover is not a drizzle: max multiplicity {report.max_multiplicity}"
        )
    logger.info(
        f"Covered {len(points)} points ({len(classes['even'])} upper, "
        f"{len(classes['odd'])} lower) by {n_parts} drizzles"
    )
    return PulledBackCover(cover, centers, report)
