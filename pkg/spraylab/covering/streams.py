"""Streams of directions u_1, u_2, ... in general position."""

import logging
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence

from .. import config
from ..core.position import vector_position_violation
from ..core.vectors import QVector
from ..duality.centers import CenterStream
from ..exceptions import DependentVectors, InputError

logger = logging.getLogger(__name__)


class DirectionStream:
    """
    Directions indexed from 1, produced on demand and cached.

    Every finite prefix is in general position: any d of the directions are
    linearly independent.
    """

    def __init__(
        self,
        d: int,
        generator: Callable[[int], QVector],
        length: Optional[int] = None,
        name: str = "",
    ):
        if d < 1:
            raise InputError("Direction streams need d >= 1")
        self.d = d
        self.length = length
        self.name = name
        self._generator = generator
        self._cache: Dict[int, QVector] = {}

    @classmethod
    def moment_curve(cls, d: int, start: Optional[int] = None) -> "DirectionStream":
        """u_n = (1, t, t^2, ..., t^{d-1}) with t = start + n - 1."""
        first = config.DRIZZLE["CURVE_START"] if start is None else start

        def generate(n: int) -> QVector:
            t = Fraction(first + n - 1)
            return QVector(tuple(t ** k for k in range(d)))

        return cls(d, generate, name=f"moment-curve(start={first})")

    @classmethod
    def from_list(
        cls, vectors: Sequence[QVector], d: Optional[int] = None
    ) -> "DirectionStream":
        """
        A finite stream; the whole list is checked for general position.

        Raises:
            DependentVectors: If some subset of at most d vectors is dependent
        """
        vectors = list(vectors)
        if not vectors:
            raise InputError("A direction list needs at least one vector")
        d = vectors[0].dim if d is None else d
        violation = vector_position_violation(vectors, d)
        if violation is not None:
            raise DependentVectors(
                f"Directions {[i + 1 for i in violation]} are linearly dependent",
                details={"violation": violation},
            )
        return cls(d, lambda n: vectors[n - 1], length=len(vectors), name="list")

    @classmethod
    def from_centers(cls, centers: CenterStream) -> "DirectionStream":
        """e_1..e_d, then the normalized dual direction of every further center."""
        return cls(centers.d, centers.direction, name=f"centers(start={centers.start})")

    def __getitem__(self, n: int) -> QVector:
        if n < 1:
            raise InputError("Direction indices start at 1")
        if self.length is not None and n > self.length:
            raise InputError(
                f"Direction stream has only {self.length} directions, asked for {n}"
            )
        if n not in self._cache:
            self._cache[n] = self._generator(n)
        return self._cache[n]

    def prefix(self, n: int) -> List[QVector]:
        return [self[k] for k in range(1, n + 1)]

    def validate_prefix(self, n: int) -> None:
        """Exhaustive general-position check of u_1..u_n."""
        violation = vector_position_violation(self.prefix(n), self.d)
        if violation is not None:
            raise DependentVectors(
                f"Prefix of length {n} is not in general position: {violation}"
            )
