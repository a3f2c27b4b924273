"""Mesh of finite sphere families.

The mesh of a collection of families is the least r >= 2 such that any r
spheres taken from r distinct families meet in a finite set. Finite
truncations of the families are checked exhaustively.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Dict, List, Optional, Sequence, Tuple

from tqdm import tqdm
from tqdm.contrib.concurrent import process_map

from .. import config
from ..core.affine import AffineSubspace
from ..core.rational import as_rational
from ..core.vectors import QVector
from ..exceptions import DimensionMismatch, DuplicatePoint, InputError
from .spheres import Sphere, SphereKind, classify, intersect_spheres

logger = logging.getLogger(__name__)

# (family index, quadrance) per chosen sphere
SphereChoice = Tuple[Tuple[int, Fraction], ...]


@dataclass(frozen=True)
class SphereFamily:
    """Spheres sharing one center, truncated to finitely many quadrances."""

    center: QVector
    quadrances: Tuple[Fraction, ...]

    def __post_init__(self):
        quadrances = tuple(as_rational(q) for q in self.quadrances)
        if any(q <= 0 for q in quadrances):
            raise InputError("Family quadrances must be positive")
        if len(set(quadrances)) != len(quadrances):
            raise InputError("Family quadrances must be distinct")
        object.__setattr__(self, "quadrances", quadrances)

    def sphere(self, quadrance: Fraction) -> Sphere:
        return Sphere(AffineSubspace.full(self.center.dim), self.center, quadrance)


@dataclass
class MeshReport:
    """Result of a mesh computation; mesh is None when no r works."""

    mesh: Optional[int]
    n_families: int
    infinite_tuples: Dict[int, SphereChoice] = field(default_factory=dict)
    checked: Dict[int, int] = field(default_factory=dict)

    @property
    def witness_tuple_for_r_minus_1(self) -> Optional[SphereChoice]:
        if self.mesh is None:
            return None
        return self.infinite_tuples.get(self.mesh - 1)

    @property
    def has_finite_mesh(self) -> bool:
        return self.mesh is not None


def _first_infinite(
    task: Tuple[Sequence[int], Sequence[SphereFamily]],
) -> Tuple[Optional[SphereChoice], int]:
    """Scan every quadrance choice for one combination of families."""
    indices, families = task
    count = 0
    for quadrances in product(*(f.quadrances for f in families)):
        count += 1
        spheres = [f.sphere(q) for f, q in zip(families, quadrances)]
        if classify(intersect_spheres(spheres)) is SphereKind.INFINITE:
            return tuple(zip(indices, quadrances)), count
    return None, count


def _scan(
    tasks: List[Tuple[Sequence[int], Sequence[SphereFamily]]],
    max_workers: int,
    show_progress: bool,
    r: int,
) -> Tuple[Optional[SphereChoice], int]:
    if max_workers > 1:
        results = process_map(
            _first_infinite,
            tasks,
            max_workers=max_workers,
            chunksize=config.MESH["CHUNKSIZE"],
            disable=not show_progress,
            desc=f"mesh r={r}",
        )
        total = sum(count for _, count in results)
        found = next((choice for choice, _ in results if choice is not None), None)
        return found, total
    total = 0
    for task in tqdm(tasks, desc=f"mesh r={r}", disable=not show_progress):
        choice, count = _first_infinite(task)
        total += count
        if choice is not None:
            return choice, total
    return None, total


def mesh_of_family(
    families: Sequence[SphereFamily],
    d: int,
    max_workers: Optional[int] = None,
    progress: Optional[bool] = None,
) -> MeshReport:
    """
    Compute the mesh of finite sphere families by exhaustive enumeration.

    Args:
        families: Families with pairwise distinct centers in Q^d
        d: Ambient dimension
        max_workers: Worker processes (default from config, 1 = sequential)
        progress: Force the tqdm bar on or off

    Returns:
        MeshReport with the least r (or None) and, for every r that fails,
        the first choice of spheres with infinite intersection
    """
    centers = {}
    for i, f in enumerate(families):
        if f.center.dim != d:
            raise DimensionMismatch(
                f"Family {i} center has dimension {f.center.dim}, expected {d}"
            )
        if f.center in centers:
            raise DuplicatePoint(
                f"Families {centers[f.center]} and {i} share a center",
                (centers[f.center], i),
            )
        centers[f.center] = i
    workers = max_workers if max_workers is not None else config.MESH["MAX_WORKERS"]
    report = MeshReport(mesh=None, n_families=len(families))

    # single spheres: only needed as the witness when the mesh is 2
    if families and d >= 2 and families[0].quadrances:
        first = families[0]
        report.infinite_tuples[1] = ((0, first.quadrances[0]),)

    for r in range(2, len(families) + 1):
        tasks = [
            (combo, [families[i] for i in combo])
            for combo in combinations(range(len(families)), r)
        ]
        show = config.progress_enabled(len(tasks), progress)
        choice, checked = _scan(tasks, workers, show, r)
        report.checked[r] = checked
        if choice is None:
            report.mesh = r
            logger.info(f"Mesh found: r={r} after {checked} finite intersections")
            break
        logger.debug(f"r={r} fails: infinite intersection at {choice}")
        report.infinite_tuples[r] = choice
    else:
        logger.info("No finite mesh among the given families")
    return report
