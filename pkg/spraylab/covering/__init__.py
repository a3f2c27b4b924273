"""Drizzle covers, difference-avoiding sets, Z-sets, escape search and cover audits."""

from .assignment import CoverReport, PartReport, PointAssignment
from .streams import DirectionStream
from .drizzle import (
    PulledBackCover,
    drizzle_cover_space,
    greedy_drizzle_assign,
    pullback_drizzle_cover,
)
from .zsets import (
    ZSet,
    avoiding_set,
    build_escape_set,
    difference_avoiding_set,
    escape_direction,
    is_difference_avoiding,
    z_set_base,
    z_set_inductive,
    z_set_line,
    z_set_mapped,
)
from .escape import Exhausted, GridDomain, Witness, adversarial_cover, escape_search
from .verify import (
    glue_parts,
    project_assignment,
    verify_hyperplane_cover,
    verify_spray_cover,
)

__all__ = [
    'CoverReport',
    'PartReport',
    'PointAssignment',
    'DirectionStream',
    'PulledBackCover',
    'drizzle_cover_space',
    'greedy_drizzle_assign',
    'pullback_drizzle_cover',
    'ZSet',
    'avoiding_set',
    'build_escape_set',
    'difference_avoiding_set',
    'escape_direction',
    'is_difference_avoiding',
    'z_set_base',
    'z_set_inductive',
    'z_set_line',
    'z_set_mapped',
    'Exhausted',
    'GridDomain',
    'Witness',
    'adversarial_cover',
    'escape_search',
    'glue_parts',
    'project_assignment',
    'verify_hyperplane_cover',
    'verify_spray_cover',
]
