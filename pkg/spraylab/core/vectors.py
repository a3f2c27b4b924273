"""Exact vectors and matrices over the rationals."""

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, List, Sequence, Tuple

import numpy as np

from ..exceptions import DimensionMismatch, InputError
from .rational import RationalLike, as_rational, format_rational


@dataclass(frozen=True)
class QVector:
    """A point or vector of Q^d, stored as a tuple of Fractions."""

    coords: Tuple[Fraction, ...]

    def __post_init__(self):
        coords = tuple(as_rational(c) for c in self.coords)
        if len(coords) < 1:
            raise InputError("A vector needs at least one coordinate")
        object.__setattr__(self, "coords", coords)

    # Construction helpers
    @classmethod
    def of(cls, *values: RationalLike) -> "QVector":
        return cls(tuple(values))

    @classmethod
    def zero(cls, dim: int) -> "QVector":
        return cls((Fraction(0),) * dim)

    @classmethod
    def unit(cls, dim: int, index: int) -> "QVector":
        """Standard basis vector e_{index+1} (0-based index)."""
        coords = [Fraction(0)] * dim
        coords[index] = Fraction(1)
        return cls(tuple(coords))

    # Sequence protocol
    @property
    def dim(self) -> int:
        return len(self.coords)

    def __len__(self) -> int:
        return len(self.coords)

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.coords)

    def __getitem__(self, index: int) -> Fraction:
        return self.coords[index]

    # Arithmetic
    def _check(self, other: "QVector"):
        if other.dim != self.dim:
            raise DimensionMismatch(f"Dimensions differ: {self.dim} vs {other.dim}")

    def __add__(self, other: "QVector") -> "QVector":
        self._check(other)
        return QVector(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "QVector") -> "QVector":
        self._check(other)
        return QVector(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "QVector":
        return QVector(tuple(-a for a in self.coords))

    def __mul__(self, scalar: RationalLike) -> "QVector":
        s = as_rational(scalar)
        return QVector(tuple(s * a for a in self.coords))

    __rmul__ = __mul__

    def __truediv__(self, scalar: RationalLike) -> "QVector":
        s = as_rational(scalar)
        return QVector(tuple(a / s for a in self.coords))

    def dot(self, other: "QVector") -> Fraction:
        self._check(other)
        return sum((a * b for a, b in zip(self.coords, other.coords)), Fraction(0))

    def quadrance(self) -> Fraction:
        """Squared Euclidean norm."""
        return self.dot(self)

    def distance_sq(self, other: "QVector") -> Fraction:
        return (self - other).quadrance()

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def is_parallel(self, other: "QVector") -> bool:
        """Whether the two vectors are linearly dependent."""
        self._check(other)
        return all(
            self.coords[i] * other.coords[j] == self.coords[j] * other.coords[i]
            for i in range(self.dim)
            for j in range(i + 1, self.dim)
        )

    def extend(self, *values: RationalLike) -> "QVector":
        return QVector(self.coords + tuple(as_rational(v) for v in values))

    def head(self, n: int) -> "QVector":
        return QVector(self.coords[:n])

    def to_strings(self) -> List[str]:
        return [format_rational(c) for c in self.coords]

    def __str__(self) -> str:
        return "(" + ", ".join(self.to_strings()) + ")"


@dataclass(frozen=True)
class QMatrix:
    """A rectangular matrix over Q, stored row by row."""

    rows: Tuple[QVector, ...]

    def __post_init__(self):
        rows = tuple(
            r if isinstance(r, QVector) else QVector(tuple(r)) for r in self.rows
        )
        if rows and len({r.dim for r in rows}) != 1:
            raise DimensionMismatch("Matrix rows must all have the same length")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[RationalLike]]) -> "QMatrix":
        return cls(
            tuple(r if isinstance(r, QVector) else QVector(tuple(r)) for r in rows)
        )

    @classmethod
    def from_columns(cls, columns: Sequence[QVector]) -> "QMatrix":
        if not columns:
            raise InputError("Need at least one column")
        return cls.from_rows(zip(*(c.coords for c in columns)))

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        return cls(tuple(QVector.unit(n, i) for i in range(n)))

    @classmethod
    def from_array(cls, array: np.ndarray) -> "QMatrix":
        return cls.from_rows([[Fraction(x) for x in row] for row in array])

    @property
    def n_rows(self) -> int:
        return len(self.rows)

    @property
    def n_cols(self) -> int:
        return self.rows[0].dim if self.rows else 0

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.n_rows, self.n_cols)

    def column(self, j: int) -> QVector:
        return QVector(tuple(r[j] for r in self.rows))

    def transpose(self) -> "QMatrix":
        return QMatrix.from_rows(zip(*(r.coords for r in self.rows)))

    def apply(self, x: QVector) -> QVector:
        """Matrix-vector product."""
        if x.dim != self.n_cols:
            raise DimensionMismatch(
                f"Cannot apply {self.shape} matrix to a {x.dim}-vector"
            )
        return QVector(tuple(r.dot(x) for r in self.rows))

    def __matmul__(self, other: "QMatrix") -> "QMatrix":
        if self.n_cols != other.n_rows:
            raise DimensionMismatch(f"Cannot multiply {self.shape} by {other.shape}")
        cols = [other.column(j) for j in range(other.n_cols)]
        return QMatrix.from_rows([[r.dot(c) for c in cols] for r in self.rows])

    def to_array(self) -> np.ndarray:
        """Object-dtype numpy array of Fractions (a fresh, writable copy)."""
        return np.array([list(r.coords) for r in self.rows], dtype=object).reshape(
            self.n_rows, self.n_cols
        )

    def to_strings(self) -> List[List[str]]:
        return [r.to_strings() for r in self.rows]
