"""Exact linear algebra over Q.

Rank and determinant use Bareiss' fraction-free elimination on integer rows
(every row is first scaled by the lcm of its denominators). Row reduction,
null spaces and linear solves use Gauss-Jordan elimination on numpy object
arrays of Fractions.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import List, Sequence, Tuple

import numpy as np

from ..exceptions import DependentVectors, DimensionMismatch, InputError, NoSolution
from .vectors import QMatrix, QVector

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LinearSolution:
    """Solution set of a consistent linear system: point + span(null_basis)."""

    point: QVector
    null_basis: Tuple[QVector, ...]

    @property
    def is_unique(self) -> bool:
        return not self.null_basis


def _integer_array(m: QMatrix) -> Tuple[np.ndarray, List[int]]:
    """Scale each row to integers. Returns the array and the row scale factors."""
    scales = [lcm(*(c.denominator for c in row)) for row in m.rows]
    data = [[int(c * s) for c in row] for row, s in zip(m.rows, scales)]
    return np.array(data, dtype=object).reshape(m.n_rows, m.n_cols), scales


def _bareiss(a: np.ndarray) -> Tuple[int, int]:
    """
    Fraction-free row echelon form, in place.

    Returns:
        (rank, sign) where sign tracks row swaps
    """
    n_rows, n_cols = a.shape
    r, prev, sign = 0, 1, 1
    for c in range(n_cols):
        if r == n_rows:
            break
        p = next((i for i in range(r, n_rows) if a[i, c] != 0), None)
        if p is None:
            continue
        if p != r:
            a[[r, p]] = a[[p, r]]
            sign = -sign
        pivot = a[r, c]
        for i in range(r + 1, n_rows):
            # exact: every entry is a minor of the original matrix
            a[i, c + 1:] = (pivot * a[i, c + 1:] - a[i, c] * a[r, c + 1:]) // prev
            a[i, c] = 0
        prev = pivot
        r += 1
    return r, sign


def rank(m: QMatrix) -> int:
    """Exact rank over Q."""
    if m.n_rows == 0 or m.n_cols == 0:
        return 0
    a, _ = _integer_array(m)
    r, _ = _bareiss(a)
    return r


def determinant(m: QMatrix) -> Fraction:
    """Exact determinant of a square matrix."""
    n_rows, n_cols = m.shape
    if n_rows != n_cols:
        raise DimensionMismatch(f"Determinant needs a square matrix, got {m.shape}")
    if n_rows == 0:
        return Fraction(1)
    a, scales = _integer_array(m)
    r, sign = _bareiss(a)
    if r < n_rows:
        return Fraction(0)
    denominator = 1
    for s in scales:
        denominator *= s
    return Fraction(sign * a[n_rows - 1, n_cols - 1], denominator)


def rref(m: QMatrix) -> Tuple[np.ndarray, List[int]]:
    """
    Reduced row echelon form.

    Args:
        m: Matrix to reduce

    Returns:
        (reduced object array, list of pivot columns)
    """
    return _rref_array(m.to_array())


def _rref_array(a: np.ndarray) -> Tuple[np.ndarray, List[int]]:
    n_rows, n_cols = a.shape
    pivots: List[int] = []
    r = 0
    for c in range(n_cols):
        if r == n_rows:
            break
        p = next((i for i in range(r, n_rows) if a[i, c] != 0), None)
        if p is None:
            continue
        if p != r:
            a[[r, p]] = a[[p, r]]
        a[r, :] = a[r, :] / a[r, c]
        for i in range(n_rows):
            if i != r and a[i, c] != 0:
                a[i, :] = a[i, :] - a[i, c] * a[r, :]
        pivots.append(c)
        r += 1
    return a, pivots


def _rows_to_vectors(a: np.ndarray, count: int) -> List[QVector]:
    return [QVector(tuple(Fraction(x) for x in a[i, :])) for i in range(count)]


def canonical_basis(vectors: Sequence[QVector]) -> List[QVector]:
    """Reduced echelon basis of the span of the given vectors."""
    if not vectors:
        return []
    a, pivots = rref(QMatrix(tuple(vectors)))
    return _rows_to_vectors(a, len(pivots))


def null_space(m: QMatrix) -> List[QVector]:
    """
    Basis of the right null space {x : m x = 0}.

    The basis is returned in reduced echelon form, so it is canonical for
    the subspace.

    Args:
        m: Matrix with at least one row

    Returns:
        List of basis vectors, empty when m has full column rank
    """
    if m.n_rows == 0:
        raise InputError("null_space needs a matrix with at least one row")
    a, pivots = rref(m)
    n_cols = m.n_cols
    free = [c for c in range(n_cols) if c not in pivots]
    basis = []
    for f in free:
        coords = [Fraction(0)] * n_cols
        coords[f] = Fraction(1)
        for row_index, pc in enumerate(pivots):
            coords[pc] = -a[row_index, f]
        basis.append(QVector(tuple(coords)))
    return canonical_basis(basis)


def solve_affine(m: QMatrix, b: QVector) -> LinearSolution:
    """
    Full solution set of m x = b.

    Args:
        m: Coefficient matrix
        b: Right-hand side, one entry per row of m

    Returns:
        A particular solution (free variables set to 0) and a null-space basis

    Raises:
        NoSolution: If the system is inconsistent
    """
    if b.dim != m.n_rows:
        raise DimensionMismatch(
            f"Right-hand side has {b.dim} entries, matrix has {m.n_rows} rows"
        )
    n_cols = m.n_cols
    column = np.array(b.coords, dtype=object).reshape(-1, 1)
    augmented = np.concatenate([m.to_array(), column], axis=1)
    a, pivots = _rref_array(augmented)
    if pivots and pivots[-1] == n_cols:
        raise NoSolution("Linear system is inconsistent")
    coords = [Fraction(0)] * n_cols
    for row_index, pc in enumerate(pivots):
        coords[pc] = Fraction(a[row_index, n_cols])
    return LinearSolution(point=QVector(tuple(coords)), null_basis=tuple(null_space(m)))


def solve_linear(m: QMatrix, b: QVector) -> QVector:
    """
    Solve m x = b exactly.

    For an underdetermined consistent system this returns the particular
    solution of ``solve_affine``; use that function to get the null basis too.

    Raises:
        NoSolution: If the system is inconsistent
    """
    return solve_affine(m, b).point


def inverse(m: QMatrix) -> QMatrix:
    """Inverse of a square matrix by Gauss-Jordan elimination on [m | I]."""
    n_rows, n_cols = m.shape
    if n_rows != n_cols:
        raise DimensionMismatch(f"Inverse needs a square matrix, got {m.shape}")
    identity = QMatrix.identity(n_rows).to_array()
    augmented = np.concatenate([m.to_array(), identity], axis=1)
    a, pivots = _rref_array(augmented)
    if pivots[:n_rows] != list(range(n_rows)):
        raise DependentVectors("Matrix is singular")
    return QMatrix.from_array(a[:, n_rows:])


def is_independent(vectors: Sequence[QVector]) -> bool:
    """Whether the vectors are linearly independent."""
    if not vectors:
        return True
    if len(vectors) > vectors[0].dim:
        return False
    return rank(QMatrix(tuple(vectors))) == len(vectors)
