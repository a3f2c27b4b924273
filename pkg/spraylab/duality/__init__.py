"""Dual directions of centers and the Phi transform."""

from .centers import (
    CenterConfig,
    CenterStream,
    DualDirection,
    HPoint,
    RadiiVector,
    directions_from_centers,
    extra_direction,
    ivan_coefficients,
    ivan_residual,
    normalize_direction,
    u_space,
)
from .transfer import (
    basis_change,
    basis_change_inverse,
    dual_direction,
    dualize,
    hpoint_on_sphere,
    phi,
    phi_inverse,
    reflect,
    sphere_image_basis,
    sphere_image_extra,
)

__all__ = [
    'CenterConfig',
    'CenterStream',
    'DualDirection',
    'HPoint',
    'RadiiVector',
    'directions_from_centers',
    'extra_direction',
    'ivan_coefficients',
    'ivan_residual',
    'normalize_direction',
    'u_space',
    'basis_change',
    'basis_change_inverse',
    'dual_direction',
    'dualize',
    'hpoint_on_sphere',
    'phi',
    'phi_inverse',
    'reflect',
    'sphere_image_basis',
    'sphere_image_extra',
]
