"""Exact-arithmetic toolkit for spheres, sprays and drizzles.

This package provides exact rational constructions for intersections of
spheres, the duality between sphere covers and hyperplane covers, and the
finite covering combinatorics built on top of it.

Main modules:
- core: Rational vectors, exact linear algebra, flats and position predicates
- geometry: Sphere intersections, infinite-intersection witnesses and mesh
- duality: Centers on the base hyperplane and the squared-distance map
- covering: Drizzle covers, Z-sets, escape search and cover audits
- cli: The spraylab command line
- pipeline: Regeneration of the worked examples
- config: Configuration settings

For detailed usage, see the README.md file.
"""

from . import config

# Import project name and version from config
__project_name__ = config.PROJECT_NAME
__version__ = config.PROJECT_VERSION
__author__ = 'SprayLab developers'

# Import modules
from . import core
from . import geometry
from . import duality
from . import covering
from .pipeline import run_fixtures
