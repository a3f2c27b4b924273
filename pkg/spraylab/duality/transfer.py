"""The map Phi between the upper half-space and E^d, and sphere images.

Phi sends x to (|x - c_1|^2, ..., |x - c_d|^2). It turns spheres around a
basis center c_i into hyperplanes w_i = const and spheres around an extra
center into the hyperplanes L(u, k) = {u . w + b k + c = 0}.
"""

import logging
from typing import Optional, Sequence, Tuple

from ..core.affine import Hyperplane
from ..core.linalg import inverse, is_independent
from ..core.rational import RationalLike, as_rational
from ..core.vectors import QMatrix, QVector
from ..exceptions import DependentVectors, DimensionMismatch, InputError, NotInE
from .centers import (
    CenterConfig,
    DualDirection,
    HPoint,
    RadiiVector,
    extra_direction,
    ivan_coefficients,
)

logger = logging.getLogger(__name__)


def phi(cfg: CenterConfig, x: HPoint, closure: bool = False) -> RadiiVector:
    """
    Squared distances from x to the d basis centers.

    Args:
        cfg: Center configuration
        x: Point of the open upper half-space (or of its closure when closure=True)
        closure: Accept boundary points with height_sq = 0

    Returns:
        The radii vector Phi(x)
    """
    if x.dim != cfg.d:
        raise DimensionMismatch(
            f"Point of dimension {x.dim} for a {cfg.d}-dimensional configuration"
        )
    if x.is_boundary and not closure:
        raise InputError(
            "Phi is defined on the open upper half-space; got a boundary point"
        )
    return RadiiVector(QVector(tuple(x.distance_sq_to(c) for c in cfg.basis_centers)))


def phi_inverse(cfg: CenterConfig, r: RadiiVector, closure: bool = False) -> HPoint:
    """
    The point x of the upper half-space with Phi(x) = r.

    The differences r_i - r_1 are linear in the base point:
    2 (p_i - p_1) . base = |p_i|^2 - |p_1|^2 - (r_i - r_1). The height is then
    read off the first sphere: height_sq = r_1 - |base - p_1|^2.

    Args:
        cfg: Center configuration
        r: Radii vector
        closure: Also accept height_sq = 0

    Returns:
        The unique preimage (an upper point)

    Raises:
        NotInE: If r is not in E^d (no point of positive height maps to r)
    """
    if r.dim != cfg.d:
        raise DimensionMismatch(
            f"Radii vector of dimension {r.dim} for a {cfg.d}-dimensional configuration"
        )
    p = cfg.basis_points
    rhs = QVector(
        tuple(
            p[i].quadrance() - p[0].quadrance() - (r.r[i] - r.r[0])
            for i in range(1, cfg.d)
        )
    )
    base = cfg.difference_inverse.apply(rhs)
    height_sq = r.r[0] - base.distance_sq(p[0])
    if height_sq > 0 or (closure and height_sq == 0):
        return HPoint(base, height_sq)
    raise NotInE(
        f"{r.r} is not in E^{cfg.d}: height_sq would be {height_sq}",
        details={"height_sq": height_sq},
    )


def sphere_image_basis(cfg: CenterConfig, i: int, rho: RationalLike) -> Hyperplane:
    """H_i(rho) = {w : w_i = rho}, the image of the sphere of quadrance rho at c_i."""
    if not 1 <= i <= cfg.d:
        raise InputError(f"Basis index must be in 1..{cfg.d}, got {i}")
    rho = as_rational(rho)
    if rho <= 0:
        raise InputError("Quadrance must be positive")
    return Hyperplane(QVector.unit(cfg.d, i - 1), rho)


def sphere_image_extra(
    cfg: CenterConfig, j: int, dd: DualDirection, k: RationalLike
) -> Hyperplane:
    """
    L(u, k) = {w : u . w + b k + c = 0}, the image of the sphere around extra
    center j (0-based) with quadrance k.
    """
    if not 0 <= j < len(cfg.extra_centers):
        raise InputError(
            f"Extra index must be in 0..{len(cfg.extra_centers) - 1}, got {j}"
        )
    if dd.extra_index is not None and dd.extra_index != j:
        raise InputError(
            f"Dual direction belongs to extra center {dd.extra_index}, not {j}"
        )
    k = as_rational(k)
    if k <= 0:
        raise InputError("Quadrance must be positive")
    # validates u in U(q_j)
    ivan_coefficients(cfg, cfg.extra_centers[j], dd.u, j)
    return Hyperplane(dd.u, -(dd.b * k + dd.c))


def dual_direction(cfg: CenterConfig, j: int) -> DualDirection:
    """The normalized dual direction of extra center j with its coefficients."""
    q = cfg.extra_centers[j]
    return ivan_coefficients(cfg, q, extra_direction(cfg, q), j)


def dualize(
    cfg: CenterConfig, center_index: int, quadrance: RationalLike
) -> Tuple[Hyperplane, Optional[DualDirection]]:
    """
    Image of the sphere around a center (1-based over basis then extra centers).

    Returns:
        (hyperplane, dual direction or None for basis centers)
    """
    if center_index < 1:
        raise InputError("Center indices start at 1")
    if center_index <= cfg.d:
        return sphere_image_basis(cfg, center_index, quadrance), None
    j = center_index - cfg.d - 1
    if j >= len(cfg.extra_centers):
        raise InputError(f"Center index {center_index} out of range")
    dd = dual_direction(cfg, j)
    return sphere_image_extra(cfg, j, dd, quadrance), dd


def basis_change(us: Sequence[QVector]) -> QMatrix:
    """
    Matrix M with rows u_1..u_d, so that (M x)_i = u_i . x.

    M maps every hyperplane orthogonal to u_i onto a hyperplane w_i = const.

    Raises:
        DependentVectors: If the u_i are not a basis
    """
    if not us:
        raise InputError("basis_change needs vectors")
    d = us[0].dim
    if len(us) != d or any(u.dim != d for u in us):
        raise DimensionMismatch(f"basis_change needs {d} vectors of dimension {d}")
    if not is_independent(list(us)):
        raise DependentVectors("Vectors are linearly dependent")
    return QMatrix(tuple(us))


def basis_change_inverse(us: Sequence[QVector]) -> QMatrix:
    return inverse(basis_change(us))


def reflect(x: HPoint) -> HPoint:
    """Mirror image through the base hyperplane."""
    return x.reflected()


def hpoint_on_sphere(x: HPoint, center: QVector, quadrance: RationalLike) -> bool:
    """Whether x lies on the sphere around a base-hyperplane center."""
    return x.distance_sq_to(center) == as_rational(quadrance)
