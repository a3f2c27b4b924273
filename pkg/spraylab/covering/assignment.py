"""Point assignments (finite covers split into numbered parts) and cover reports."""

import logging
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterator, List, Optional, Sequence, Tuple, Union

from ..core.vectors import QVector
from ..duality.centers import HPoint
from ..exceptions import InputError

logger = logging.getLogger(__name__)

Point = Union[QVector, HPoint]


@dataclass(frozen=True)
class PointAssignment:
    """
    An enumeration of points, each assigned to one part k >= 1.

    Parts are numbered from 1. ``n_parts`` may exceed the largest used index
    when a cover is indexed by centers and some of them received no point.
    """

    points: Tuple[Point, ...]
    part_of: Tuple[int, ...]
    n_parts: Optional[int] = None

    def __post_init__(self):
        points = tuple(self.points)
        part_of = tuple(int(k) for k in self.part_of)
        if len(points) != len(part_of):
            raise InputError(f"{len(points)} points but {len(part_of)} part labels")
        if any(k < 1 for k in part_of):
            raise InputError("Part indices start at 1")
        used = max(part_of, default=0)
        n_parts = used if self.n_parts is None else int(self.n_parts)
        if n_parts < used:
            raise InputError(f"n_parts={n_parts} but part {used} is used")
        object.__setattr__(self, "points", points)
        object.__setattr__(self, "part_of", part_of)
        object.__setattr__(self, "n_parts", n_parts)

    @classmethod
    def empty(cls) -> "PointAssignment":
        return cls((), ())

    @classmethod
    def from_parts(cls, parts: Sequence[Sequence[Point]]) -> "PointAssignment":
        """Build from a list of parts; parts[0] becomes part 1."""
        points, labels = [], []
        for k, part in enumerate(parts, start=1):
            points.extend(part)
            labels.extend([k] * len(part))
        return cls(tuple(points), tuple(labels), len(parts))

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self) -> Iterator[Tuple[Point, int]]:
        return iter(zip(self.points, self.part_of))

    def indices_by_part(self) -> Dict[int, List[int]]:
        """Point indices of every part 1..n_parts, empty parts included."""
        groups: Dict[int, List[int]] = {k: [] for k in range(1, self.n_parts + 1)}
        for i, k in enumerate(self.part_of):
            groups[k].append(i)
        return groups

    def part(self, k: int) -> List[Point]:
        return [p for p, label in self if label == k]

    def covered(self) -> frozenset:
        """The set of assigned points."""
        return frozenset(self.points)

    def with_points(self, points: Sequence[Point]) -> "PointAssignment":
        """Same part structure, new points (one per old point)."""
        return PointAssignment(tuple(points), self.part_of, self.n_parts)

    def merged(self, other: "PointAssignment") -> "PointAssignment":
        n_parts = max(self.n_parts, other.n_parts)
        return PointAssignment(
            self.points + other.points, self.part_of + other.part_of, n_parts
        )


@dataclass
class PartReport:
    """Multiplicity audit of one part."""

    part: int
    size: int
    max_multiplicity: int
    histogram: Dict[int, int] = field(default_factory=dict)
    worst_value: Optional[Fraction] = None
    worst_points: Tuple[int, ...] = ()


@dataclass
class CoverReport:
    """
    Per-part multiplicities of a cover.

    ``kind`` is "hyperplane" (points grouped by u_k . p) or "sphere" (points
    grouped by quadrance to the part's center). ``histogram`` maps a group
    size to the number of groups of that size.
    """

    kind: str
    parts: List[PartReport] = field(default_factory=list)

    @property
    def max_multiplicity(self) -> int:
        return max((p.max_multiplicity for p in self.parts), default=0)

    def is_within(self, threshold: int) -> bool:
        """Every hyperplane (or sphere) meets every part in at most threshold points."""
        return self.max_multiplicity <= threshold

    @property
    def is_drizzle(self) -> bool:
        return self.is_within(1)

    def part(self, k: int) -> PartReport:
        return self.parts[k - 1]


def audit_groups(
    part: int, indices: Sequence[int], keys: Sequence[Fraction]
) -> PartReport:
    """Group the points of one part by an exact key and summarize."""
    groups: Dict[Fraction, List[int]] = defaultdict(list)
    for i, key in zip(indices, keys):
        groups[key].append(i)
    if not groups:
        return PartReport(part=part, size=0, max_multiplicity=0)
    histogram = Counter(len(g) for g in groups.values())
    # ties go to the smallest key so reports are deterministic
    worst_key = min(groups, key=lambda key: (-len(groups[key]), key))
    return PartReport(
        part=part,
        size=len(indices),
        max_multiplicity=len(groups[worst_key]),
        histogram=dict(sorted(histogram.items())),
        worst_value=worst_key,
        worst_points=tuple(groups[worst_key]),
    )
