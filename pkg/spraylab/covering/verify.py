"""Exact multiplicity audits of covers, projection of spray covers into a hyperplane."""

import logging
from typing import Dict, List, Sequence, Tuple, Union

from ..core.affine import Hyperplane
from ..core.vectors import QVector
from ..duality.centers import CenterConfig, CenterStream, HPoint
from ..exceptions import DimensionMismatch, InputError, ZeroVector
from .assignment import CoverReport, Point, PointAssignment, audit_groups
from .streams import DirectionStream

logger = logging.getLogger(__name__)

Directions = Union[Sequence[QVector], DirectionStream]
Centers = Union[Sequence[QVector], CenterConfig, CenterStream]


def _direction(dirs: Directions, k: int) -> QVector:
    if isinstance(dirs, DirectionStream):
        return dirs[k]
    if k > len(dirs):
        raise InputError(f"Part {k} has no direction ({len(dirs)} given)")
    return dirs[k - 1]


def _center(centers: Centers, k: int) -> QVector:
    if isinstance(centers, CenterStream):
        return centers.center(k)
    if isinstance(centers, CenterConfig):
        centers = centers.centers
    if k > len(centers):
        raise InputError(f"Part {k} has no center ({len(centers)} given)")
    return centers[k - 1]


def _quadrance(p: Point, c: QVector):
    if isinstance(p, HPoint):
        return p.distance_sq_to(c)
    if p.dim != c.dim:
        raise DimensionMismatch(f"Point {p} and center {c} have different dimensions")
    return p.distance_sq(c)


def verify_hyperplane_cover(
    assignment: PointAssignment, dirs: Directions
) -> CoverReport:
    """
    Group every part k by the exact value u_k . p.

    Args:
        assignment: Points in Q^d with their parts
        dirs: Direction of each part (part k uses the k-th direction)

    Returns:
        CoverReport of kind "hyperplane"; empty parts report multiplicity 0
    """
    report = CoverReport(kind="hyperplane")
    for k, indices in assignment.indices_by_part().items():
        u = _direction(dirs, k)
        if u.is_zero():
            raise ZeroVector(f"Direction of part {k} is zero")
        keys = [u.dot(assignment.points[i]) for i in indices]
        report.parts.append(audit_groups(k, indices, keys))
    logger.debug(
        f"Hyperplane audit: {assignment.n_parts} parts, "
        f"max multiplicity {report.max_multiplicity}"
    )
    return report


def verify_spray_cover(centers: Centers, assignment: PointAssignment) -> CoverReport:
    """
    Group every part k by the exact quadrance to its center c_k.

    Args:
        centers: Center of each part, as a list, a CenterConfig or a CenterStream
        assignment: QVector or HPoint points with their parts

    Returns:
        CoverReport of kind "sphere"
    """
    report = CoverReport(kind="sphere")
    for k, indices in assignment.indices_by_part().items():
        c = _center(centers, k)
        keys = [_quadrance(assignment.points[i], c) for i in indices]
        report.parts.append(audit_groups(k, indices, keys))
    logger.debug(
        f"Spray audit: {assignment.n_parts} parts, "
        f"max multiplicity {report.max_multiplicity}"
    )
    return report


def glue_parts(
    assignment: PointAssignment, centers: Sequence[QVector]
) -> Tuple[PointAssignment, List[QVector]]:
    """
    Merge parts whose centers coincide.

    Parts are renumbered densely in the order their centers first appear.

    Returns:
        (glued assignment, one center per new part)
    """
    if len(centers) < assignment.n_parts:
        raise InputError(f"{assignment.n_parts} parts but only {len(centers)} centers")
    new_index: Dict[QVector, int] = {}
    relabel = {}
    for k in range(1, assignment.n_parts + 1):
        c = centers[k - 1]
        if c not in new_index:
            new_index[c] = len(new_index) + 1
        relabel[k] = new_index[c]
    glued = PointAssignment(
        assignment.points, tuple(relabel[k] for k in assignment.part_of), len(new_index)
    )
    return glued, list(new_index)


def project_assignment(
    assignment: PointAssignment,
    centers: Sequence[QVector],
    h: Hyperplane,
    mode: str = "orthogonal",
    glue: bool = False,
) -> Tuple[PointAssignment, List[QVector]]:
    """
    Move a spray cover into the hyperplane h.

    Centers are always projected orthogonally. With mode "orthogonal" every
    point is projected too; with mode "restrict" only the points already in h
    are kept. Projected centers need not be distinct; ``glue`` merges parts
    that end up sharing a center.

    Returns:
        (assignment in h, projected centers)
    """
    if mode not in ("orthogonal", "restrict"):
        raise InputError(f"Unknown projection mode {mode!r}")
    if any(isinstance(p, HPoint) for p in assignment.points):
        raise InputError("Projection needs rational points, not (base, height^2) pairs")
    for p in list(assignment.points) + list(centers):
        if p.dim != h.ambient_dim:
            raise DimensionMismatch(f"{p} does not live in dimension {h.ambient_dim}")
    projected_centers = [h.project(c) for c in centers[: assignment.n_parts]]
    if mode == "orthogonal":
        projected = assignment.with_points([h.project(p) for p in assignment.points])
    else:
        kept = [(p, k) for p, k in assignment if h.contains(p)]
        projected = PointAssignment(
            tuple(p for p, _ in kept), tuple(k for _, k in kept), assignment.n_parts
        )
    logger.debug(
        f"Projected {len(assignment)} points ({mode}) "
        f"to {len(projected)} points in {h}"
    )
    if glue:
        return glue_parts(projected, projected_centers)
    return projected, projected_centers
