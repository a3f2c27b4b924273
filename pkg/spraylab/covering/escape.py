"""Finite search for translates of a Z-set that escape a cover.

The search is honest: it only reports facts about the given finite
instance. A returned Witness is re-checked point by point against the cover;
Exhausted means every translate was fully covered inside the domain.
"""

import logging
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterator, List, Optional, Sequence, Tuple, Union

from tqdm import tqdm
from tqdm.contrib.concurrent import process_map

from .. import config
from ..core.rational import RationalLike, as_rational
from ..core.vectors import QVector
from ..exceptions import DimensionMismatch, InputError, InvariantViolation
from .assignment import PointAssignment
from .verify import verify_hyperplane_cover
from .zsets import ZSet

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GridDomain:
    """The rational grid lower + step * Z^d inside the box [lower, upper]."""

    lower: QVector
    upper: QVector
    step: Fraction

    def __post_init__(self):
        object.__setattr__(self, "step", as_rational(self.step))
        if self.lower.dim != self.upper.dim:
            raise DimensionMismatch("Grid corners must have the same dimension")
        if self.step <= 0:
            raise InputError("Grid step must be positive")
        if any(lo > hi for lo, hi in zip(self.lower, self.upper)):
            raise InputError("Grid lower corner exceeds the upper corner")

    @classmethod
    def cube(
        cls, d: int, n: int, step: RationalLike = 1, origin: RationalLike = 0
    ) -> "GridDomain":
        """n points per axis starting at origin."""
        step = as_rational(step)
        origin = as_rational(origin)
        upper = origin + step * (n - 1)
        return cls(QVector((origin,) * d), QVector((upper,) * d), step)

    @property
    def dim(self) -> int:
        return self.lower.dim

    def _axis(self, i: int) -> List[Fraction]:
        n = int((self.upper[i] - self.lower[i]) // self.step)
        return [self.lower[i] + self.step * k for k in range(n + 1)]

    @property
    def size(self) -> int:
        total = 1
        for i in range(self.dim):
            total *= len(self._axis(i))
        return total

    def contains(self, x: QVector) -> bool:
        if x.dim != self.dim:
            return False
        for xi, lo, hi in zip(x, self.lower, self.upper):
            if xi < lo or xi > hi or ((xi - lo) / self.step).denominator != 1:
                return False
        return True

    def points(self) -> Iterator[QVector]:
        """All grid points in lexicographic order."""
        for coords in product(*(self._axis(i) for i in range(self.dim))):
            yield QVector(coords)


@dataclass(frozen=True)
class Witness:
    """A translate p and a point p + z in the domain that no part covers."""

    translate: QVector
    translate_index: int
    point: QVector
    z_index: int
    max_multiplicity: int


@dataclass(frozen=True)
class Exhausted:
    """Every translate was covered inside the domain."""

    n_translates: int
    n_checked: int
    max_multiplicity: int


EscapeResult = Union[Witness, Exhausted]


def _first_escape(
    task: Tuple[int, Sequence[QVector], Sequence[QVector], frozenset, GridDomain],
):
    """Scan one chunk of translates; returns the first escape found, or None."""
    """Scan one chunk of translates for (translate index, z index, point)."""
    offset, translates, z_points, covered, domain = task
    checked = 0
    for t, p in enumerate(translates):
        for zi, z in enumerate(z_points):
            x = p + z
            if not domain.contains(x):
                continue
            checked += 1
            if x not in covered:
                return (offset + t, zi, x), checked
    return None, checked


def _reverify(x: QVector, assignment: PointAssignment, domain: GridDomain) -> bool:
    return domain.contains(x) and all(q != x for q in assignment.points)


def escape_search(
    assignment: PointAssignment,
    dirs: Sequence[QVector],
    z: ZSet,
    translates: Sequence[QVector],
    domain: GridDomain,
    max_workers: Optional[int] = None,
    progress: Optional[bool] = None,
) -> EscapeResult:
    """
    Find the first translate p with a point of p + Z in the domain and in no part.

    Args:
        assignment: The cover A_1, ..., A_N over the grid
        dirs: Direction of every part, used to audit the cover's multiplicity
        z: The Z-set
        translates: Candidate translates, searched in order
        domain: Grid domain; points of p + Z outside it are skipped
        max_workers: Worker processes (default from config, 1 = sequential)
        progress: Force the tqdm bar on or off

    Returns:
        Witness (re-verified) or Exhausted
    """
    for p in translates:
        if p.dim != z.dim:
            raise DimensionMismatch(
                f"Translate {p} does not match the Z-set dimension {z.dim}"
            )
    if z.dim != domain.dim:
        raise DimensionMismatch("Z-set and domain dimensions differ")
    multiplicity = verify_hyperplane_cover(assignment, dirs).max_multiplicity
    covered = assignment.covered()
    workers = max_workers if max_workers is not None else config.ESCAPE["MAX_WORKERS"]
    show = config.progress_enabled(len(translates), progress)
    chunk = config.ESCAPE["CHUNKSIZE"]
    tasks = [
        (i, list(translates[i : i + chunk]), z.points, covered, domain)
        for i in range(0, len(translates), chunk)
    ]

    if workers > 1 and len(tasks) > 1:
        results = process_map(
            _first_escape, tasks, max_workers=workers, disable=not show, desc="escape"
        )
    else:
        results = []
        for task in tqdm(tasks, desc="escape", disable=not show):
            results.append(_first_escape(task))
            if results[-1][0] is not None:
                break

    checked = 0
    for found, count in results:
        checked += count
        if found is None:
            continue
        t, zi, x = found
        if not _reverify(x, assignment, domain):
            raise InvariantViolation(f"Escape witness {x} failed re-verification")
        logger.info(f"Translate {t} escapes the cover at {x}")
        return Witness(translates[t], t, x, zi, multiplicity)
    logger.info(
        f"All {len(translates)} translates covered "
        f"({checked} domain points checked)"
    )
    return Exhausted(len(translates), checked, multiplicity)


def adversarial_cover(
    domain: Union[GridDomain, Sequence[QVector]], dirs: Sequence[QVector], t: int
) -> PointAssignment:
    """
    Cover as much as possible with at most t points per hyperplane and part.

    Each point goes to the first part whose hyperplane through it still holds
    fewer than t points; points that fit nowhere stay uncovered.

    Args:
        domain: A grid, or an explicit list of points
        dirs: One direction per part
        t: Multiplicity cap
    """
    if t < 1:
        raise InputError("The multiplicity cap must be at least 1")
    if not dirs:
        raise InputError("adversarial_cover needs at least one direction")
    points = domain.points() if isinstance(domain, GridDomain) else iter(domain)
    load: List[Counter] = [Counter() for _ in dirs]
    kept, labels = [], []
    skipped = 0
    for x in points:
        for k, u in enumerate(dirs):
            key = u.dot(x)
            if load[k][key] < t:
                load[k][key] += 1
                kept.append(x)
                labels.append(k + 1)
                break
        else:
            skipped += 1
    logger.debug(
        f"Adversarial cover: {len(kept)} points covered, {skipped} left uncovered"
    )
    return PointAssignment(tuple(kept), tuple(labels), len(dirs))
