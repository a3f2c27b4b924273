"""Sphere intersections, enclosing spheres, witnesses and family meshes."""

from .spheres import (
    Sphere,
    SphereKind,
    chain_quadrances,
    classify,
    enclose_from_dependent_center,
    infinite_intersection_witness,
    intersect_chain,
    intersect_pair,
    intersect_sphere_hyperplane,
    intersect_spheres,
    make_nondegenerate_chain,
    point_on_sphere,
    sphere_within,
)
from .mesh import MeshReport, SphereFamily, mesh_of_family

__all__ = [
    'Sphere',
    'SphereKind',
    'chain_quadrances',
    'classify',
    'enclose_from_dependent_center',
    'infinite_intersection_witness',
    'intersect_chain',
    'intersect_pair',
    'intersect_sphere_hyperplane',
    'intersect_spheres',
    'make_nondegenerate_chain',
    'point_on_sphere',
    'sphere_within',
    'MeshReport',
    'SphereFamily',
    'mesh_of_family',
]
