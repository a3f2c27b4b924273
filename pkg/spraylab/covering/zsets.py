"""Difference-avoiding sets and the structured escape sets built from them.

A Z-set is kept as its construction tree so reports can be audited:

- base:      Z = {s v : s in S} + X_1 x ... x X_d, with v = (1, a_2, ..., 0)
- inductive: Z = Y + Z', with Y = {s v : s in S}
- line:      Z = {s v : s in S}
- mapped:    Z = M Z' for an invertible matrix M

Every constructor re-checks its disjointness precondition exhaustively and
asserts the product formula for the size of the flattened point set.
"""

import logging
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import (
    ClassVar,
    Iterable,
    Iterator,
    List,
    Optional,
    Sequence,
    Set,
    Tuple,
    Union,
)

from .. import config
from ..core.linalg import determinant, inverse, null_space, rank
from ..core.rational import RationalLike, as_rational
from ..core.vectors import QMatrix, QVector
from ..duality.transfer import basis_change
from ..exceptions import (
    DependentVectors,
    DimensionMismatch,
    DisjointnessPreconditionFailed,
    InputError,
    InvariantViolation,
    ZeroVector,
)

logger = logging.getLogger(__name__)


# --------------------------
# Difference-avoiding sets
# --------------------------
def centered_order(bound: int) -> Iterator[int]:
    """0, 1, -1, 2, -2, ..., bound, -bound."""
    yield 0
    for j in range(1, bound + 1):
        yield j
        yield -j


def differences(values: Iterable[Fraction]) -> Set[Fraction]:
    """The difference set X - X, including 0 when X is nonempty."""
    values = list(values)
    return {a - b for a in values for b in values}


def _greedy_avoiding(
    forbidden: Set[Fraction], candidates: Iterable[Fraction], m: int
) -> List[Fraction]:
    accepted: List[Fraction] = []
    for c in candidates:
        if all((c - a) not in forbidden for a in accepted):
            accepted.append(c)
            if len(accepted) == m:
                break
    return accepted


def avoiding_set(
    forbidden: Iterable[Fraction],
    epsilon: RationalLike,
    m: int,
    step: Optional[RationalLike] = None,
) -> List[Fraction]:
    """
    m points of (-epsilon, epsilon) whose pairwise differences avoid a finite set.

    Candidates are scanned in centered order. Without ``step`` they are
    epsilon * j / (J + 1) for J = LADDER_FACTOR * m^2 * (|forbidden| + 2),
    doubling J until m points are found. With ``step`` they are the multiples
    j * step inside the interval.

    Returns:
        Sorted list of m rationals
    """
    epsilon = as_rational(epsilon)
    if epsilon <= 0:
        raise InputError("epsilon must be positive")
    if m < 1:
        raise InputError("m must be at least 1")
    forbidden = {as_rational(f) for f in forbidden} - {Fraction(0)}
    forbidden |= {-f for f in forbidden}

    if step is not None:
        step = as_rational(step)
        if step <= 0:
            raise InputError("step must be positive")
        bound = int(-(-epsilon // step)) - 1  # largest j with j * step < epsilon
        candidates = (j * step for j in centered_order(bound))
        accepted = _greedy_avoiding(forbidden, candidates, m)
        if len(accepted) < m:
            raise InputError(
                f"(-{epsilon}, {epsilon}) holds only {len(accepted)} "
                f"admissible multiples of {step}"
            )
        return sorted(accepted)

    ladder = config.DIFFERENCE_AVOIDING["LADDER_FACTOR"] * m * m * (len(forbidden) + 2)
    for _ in range(config.DIFFERENCE_AVOIDING["MAX_DOUBLINGS"]):
        scale = epsilon / (ladder + 1)
        candidates = (scale * j for j in centered_order(ladder))
        accepted = _greedy_avoiding(forbidden, candidates, m)
        if len(accepted) == m:
            return sorted(accepted)
        logger.debug(f"Ladder J={ladder} too coarse for m={m}, doubling")
        ladder *= 2
    raise InvariantViolation(f"No difference-avoiding set of size {m} found")


def difference_avoiding_set(
    X: Sequence[RationalLike],
    epsilon: RationalLike,
    m: int,
    step: Optional[RationalLike] = None,
) -> List[Fraction]:
    """
    S inside (-epsilon, epsilon) with |S| = m and (S - S) and (X - X) meeting only in 0.

    Args:
        X: Finite list of rationals
        epsilon: Positive rational half-width
        m: Size of S
        step: Restrict S to multiples of step

    Returns:
        Sorted S; the defining property is re-verified before returning
    """
    xs = [as_rational(x) for x in X]
    s = avoiding_set(differences(xs), epsilon, m, step)
    if not is_difference_avoiding(s, xs):
        raise InvariantViolation(f"Difference-avoiding set {s} meets X - X")
    return s


def is_difference_avoiding(S: Sequence[Fraction], X: Sequence[Fraction]) -> bool:
    """(S - S) and (X - X) meet only in 0, and S has no repeated element."""
    if len(set(S)) != len(S):
        return False
    return not ((differences(S) & differences(X)) - {Fraction(0)})


# --------------------------
# Z-sets
# --------------------------
@dataclass(frozen=True)
class BaseNode:
    kind: ClassVar[str] = "base"
    v: QVector
    S: Tuple[Fraction, ...]
    X: Tuple[Tuple[Fraction, ...], ...]


@dataclass(frozen=True)
class InductiveNode:
    kind: ClassVar[str] = "inductive"
    v: QVector
    S: Tuple[Fraction, ...]
    inner: "ZSet"

    @property
    def Y(self) -> Tuple[QVector, ...]:
        return tuple(self.v * s for s in self.S)


@dataclass(frozen=True)
class LineNode:
    kind: ClassVar[str] = "line"
    v: QVector
    S: Tuple[Fraction, ...]


@dataclass(frozen=True)
class MappedNode:
    kind: ClassVar[str] = "mapped"
    matrix: QMatrix
    inner: "ZSet"


ZNode = Union[BaseNode, InductiveNode, LineNode, MappedNode]


@dataclass(frozen=True)
class ZSet:
    """A construction tree together with its flattened point list."""

    node: ZNode
    points: Tuple[QVector, ...]

    @property
    def kind(self) -> str:
        return self.node.kind

    @property
    def dim(self) -> int:
        return self.points[0].dim

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self) -> Iterator[QVector]:
        return iter(self.points)

    def depth(self) -> int:
        inner = getattr(self.node, "inner", None)
        return 1 if inner is None else 1 + inner.depth()


def _distinct(values: Sequence[RationalLike], name: str) -> Tuple[Fraction, ...]:
    values = tuple(as_rational(x) for x in values)
    if not values:
        raise InputError(f"{name} must be nonempty")
    if len(set(values)) != len(values):
        raise InputError(f"{name} has repeated elements")
    return values


def _finish(node: ZNode, points: List[QVector], expected: int) -> ZSet:
    if len(set(points)) != expected:
        raise InvariantViolation(
            f"{node.kind} Z-set has {len(set(points))} distinct points, "
            f"expected {expected}"
        )
    logger.debug(f"Built {node.kind} Z-set with {expected} points")
    return ZSet(node, tuple(points))


def z_set_base(
    d: int, v: QVector, S: Sequence[RationalLike], X: Sequence[Sequence[RationalLike]]
) -> ZSet:
    """
    Z = {s v : s in S} + X_1 x ... x X_d.

    Args:
        d: Dimension, at least 3
        v: (1, a_2, ..., a_{d-1}, 0) with a_2 != 0
        S: Offsets along v
        X: d factor lists

    Raises:
        DisjointnessPreconditionFailed: If (S - S) meets
            (X_2 / a_2 - X_2 / a_2) outside 0
    """
    if d < 3:
        raise InputError("Base Z-sets need d >= 3")
    if v.dim != d:
        raise DimensionMismatch(f"v has dimension {v.dim}, expected {d}")
    if v[0] != 1 or v[d - 1] != 0 or v[1] == 0:
        raise InputError(
            f"v must have the form (1, a_2, ..., 0) with a_2 != 0, got {v}"
        )
    if len(X) != d:
        raise InputError(f"Need {d} factor lists, got {len(X)}")
    S = _distinct(S, "S")
    X = tuple(_distinct(factor, f"X_{i + 1}") for i, factor in enumerate(X))
    a2 = v[1]
    clash = (differences(S) & differences(x / a2 for x in X[1])) - {Fraction(0)}
    if clash:
        raise DisjointnessPreconditionFailed(
            f"S - S meets X_2/a_2 - X_2/a_2 in {sorted(clash)}",
            details={"clash": sorted(clash)},
        )
    points = [v * s + QVector(x) for s in S for x in product(*X)]
    expected = len(S)
    for factor in X:
        expected *= len(factor)
    return _finish(BaseNode(v, S, X), points, expected)


def z_set_inductive(inner: ZSet, v: QVector, S: Sequence[RationalLike]) -> ZSet:
    """
    Z = Y + Z' with Y = {s v : s in S}.

    Raises:
        DisjointnessPreconditionFailed: If (Y - Y) meets (Z' - Z') outside 0
    """
    if v.dim != inner.dim:
        raise DimensionMismatch(f"v has dimension {v.dim}, inner Z-set {inner.dim}")
    if v.is_zero():
        raise ZeroVector("v must be nonzero")
    S = _distinct(S, "S")
    members = set(inner.points)
    for s, t in combinations(S, 2):
        shift = v * (s - t)
        if any(z + shift in members for z in inner.points):
            raise DisjointnessPreconditionFailed(
                f"Y - Y meets Z' - Z' at {shift}", details={"shift": shift}
            )
    points = [v * s + z for s in S for z in inner.points]
    return _finish(InductiveNode(v, S, inner), points, len(S) * len(inner))


def z_set_line(v: QVector, S: Sequence[RationalLike]) -> ZSet:
    """Z = {s v : s in S}, for directions that leave v orthogonal to all of them."""
    if v.is_zero():
        raise ZeroVector("v must be nonzero")
    S = _distinct(S, "S")
    return _finish(LineNode(v, S), [v * s for s in S], len(S))


def z_set_mapped(inner: ZSet, matrix: QMatrix) -> ZSet:
    """Push a Z-set through an invertible linear map."""
    if matrix.shape != (inner.dim, inner.dim):
        raise DimensionMismatch(
            f"Matrix of shape {matrix.shape} for a Z-set in dimension {inner.dim}"
        )
    if determinant(matrix) == 0:
        raise DependentVectors("Z-sets can only be mapped by invertible matrices")
    points = [matrix.apply(z) for z in inner.points]
    return _finish(MappedNode(matrix, inner), points, len(inner))


# --------------------------
# Escape-set construction
# --------------------------
def escape_direction(dirs: Sequence[QVector]) -> Tuple[int, QVector]:
    """
    Coordinate j and a vector v with v_j = 0 and v orthogonal to the extra directions.

    The first d directions must be e_1..e_d; v is chosen not parallel to any
    e_i. The first coordinate j (0-based) admitting such a v is returned.

    Raises:
        DependentVectors: If no coordinate admits one (too many extra directions)
    """
    if not dirs:
        raise InputError("escape_direction needs directions")
    d = dirs[0].dim
    if len(dirs) < d or any(dirs[i] != QVector.unit(d, i) for i in range(d)):
        raise InputError("The first d directions must be the standard basis")
    extras = list(dirs[d:])
    for j in range(d):
        kernel = null_space(QMatrix(tuple([QVector.unit(d, j)] + extras)))
        for w in kernel:
            if sum(1 for x in w if x != 0) >= 2:
                return j, w
        if len(kernel) >= 2:
            return j, kernel[0] + kernel[1]
    raise DependentVectors(
        f"No escape direction for {len(extras)} extra directions in dimension {d}"
    )


def _factor_values(
    n: int, half_width: Fraction, step: Optional[Fraction]
) -> List[Fraction]:
    bound = n // 2
    values = list(centered_order(bound))[:n]
    if step is None:
        return [half_width * j / (n + 1) for j in values]
    if bound * step >= half_width:
        raise InputError(
            f"{n} multiples of {step} do not fit in (-{half_width}, {half_width})"
        )
    return [j * step for j in values]


def _line_differences(points: Sequence[QVector], v: QVector) -> Set[Fraction]:
    """{r : r v is a difference of two points}."""
    pivot = next(i for i, x in enumerate(v) if x != 0)
    lines = defaultdict(list)
    for z in points:
        t = z[pivot] / v[pivot]
        lines[z - v * t].append(t)
    return {t - u for ts in lines.values() for t in ts for u in ts}


def _sup_norm(v: QVector, coordinates: Iterable[int]) -> Fraction:
    return max([Fraction(1)] + [abs(v[i]) for i in coordinates])


def _escape_base(
    basis: Sequence[QVector],
    extras: Sequence[QVector],
    epsilon: Fraction,
    factor_sizes: Sequence[int],
    spread_size: int,
    step: Optional[Fraction],
) -> ZSet:
    d = len(basis)
    T = basis_change(basis)
    T_inv = inverse(T)
    back = T_inv.transpose()
    j, v = escape_direction(
        [QVector.unit(d, i) for i in range(d)] + [back.apply(u) for u in extras]
    )
    a, b = [i for i, x in enumerate(v) if x != 0][:2]
    order = [a, b] + [i for i in range(d) if i not in (a, b, j)] + [j]
    P = QMatrix(tuple(QVector.unit(d, i) for i in order))
    v_norm = P.apply(v) / v[a]
    nu = _sup_norm(v_norm, range(1, d - 1))
    X = [_factor_values(n, epsilon / 2, step) for n in factor_sizes]
    S = difference_avoiding_set(
        [x / v_norm[1] for x in X[1]], epsilon / (2 * nu), spread_size, step
    )
    logger.debug(
        f"Escape base: j={j}, v={v_norm}, |S|={len(S)}, "
        f"factor sizes {list(factor_sizes)}"
    )
    inner = z_set_base(d, v_norm, S, X)
    return z_set_mapped(inner, T_inv @ P.transpose())


def build_escape_set(
    dirs: Sequence[QVector],
    epsilon: RationalLike,
    factor_sizes: Sequence[int],
    spread_size: int,
    step: Optional[RationalLike] = None,
) -> ZSet:
    """
    Build a Z-set that no finite low-multiplicity cover along dirs can absorb.

    When the directions do not span Q^d, Z lies on a line orthogonal to all
    of them. Otherwise the first basis among them is mapped to e_1..e_d, the
    next d - 2 directions enter the base construction, and every further
    batch of d - 1 directions adds one inductive layer.

    Args:
        dirs: Nonzero directions, all of dimension d
        epsilon: Half-width of the box the construction aims for
        factor_sizes: Sizes of X_1..X_d
        spread_size: Size of every S
        step: Keep factors and offsets on multiples of step

    Returns:
        The Z-set, with its construction tree
    """
    dirs = list(dirs)
    if not dirs:
        raise InputError("build_escape_set needs directions")
    epsilon = as_rational(epsilon)
    step = None if step is None else as_rational(step)
    d = dirs[0].dim
    for i, u in enumerate(dirs):
        if u.dim != d:
            raise DimensionMismatch(
                f"Direction {i} has dimension {u.dim}, expected {d}"
            )
        if u.is_zero():
            raise ZeroVector(f"Direction {i} is zero")
    if len(factor_sizes) != d or any(n < 1 for n in factor_sizes) or spread_size < 1:
        raise InputError(f"Need {d} positive factor sizes and a positive spread size")

    if rank(QMatrix(tuple(dirs))) < d:
        v = null_space(QMatrix(tuple(dirs)))[0]
        size = spread_size
        for n in factor_sizes:
            size *= n
        S = avoiding_set((), epsilon / _sup_norm(v, range(d)), size, step)
        logger.info(f"Directions do not span Q^{d}: line Z-set with {size} points")
        return z_set_line(v, S)
    if d < 3:
        raise InputError("Spanning escape sets need d >= 3")

    basis_idx: List[int] = []
    for i, u in enumerate(dirs):
        if (
            rank(QMatrix(tuple(dirs[k] for k in basis_idx + [i])))
            == len(basis_idx) + 1
        ):
            basis_idx.append(i)
        if len(basis_idx) == d:
            break
    rest = [u for i, u in enumerate(dirs) if i not in basis_idx]
    head, tail = rest[: d - 2], rest[d - 2 :]
    batches = [tail[i : i + d - 1] for i in range(0, len(tail), d - 1)]

    z = _escape_base(
        [dirs[i] for i in basis_idx],
        head,
        epsilon / 2 ** len(batches),
        factor_sizes,
        spread_size,
        step,
    )
    for level, batch in enumerate(batches, start=1):
        eps = epsilon / 2 ** (len(batches) - level)
        v = null_space(QMatrix(tuple(batch)))[0]
        forbidden = _line_differences(z.points, v)
        half_width = eps / (2 * _sup_norm(v, range(d)))
        S = avoiding_set(forbidden, half_width, spread_size, step)
        z = z_set_inductive(z, v, S)
    logger.info(
        f"Escape set for {len(dirs)} directions: {len(z)} points, depth {z.depth()}"
    )
    return z
