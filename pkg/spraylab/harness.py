"""Randomized verification suites.

Each suite draws seeded random instances and checks one family of exact
properties of the library: finiteness of sphere chains, the dimension
formula, nondegenerate chains, witnesses, meshes, the Phi transform,
directions dual to centers, drizzle covers, Z-sets and escape witnesses.
Nothing is tolerated: a single mismatch is a failure.
"""

import logging
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Dict, Iterator, List, Optional, Set, Tuple

import numpy as np
from tqdm import tqdm

from . import config, sampling
from .core.affine import affine_span
from .core.position import extends_general_position_vectors, vector_position_violation
from .core.vectors import QVector
from .covering.assignment import PointAssignment
from .covering.drizzle import (
    drizzle_cover_space,
    greedy_drizzle_assign,
    pullback_drizzle_cover,
)
from .covering.escape import GridDomain, Witness, adversarial_cover, escape_search
from .covering.streams import DirectionStream
from .covering.verify import verify_hyperplane_cover
from .covering.zsets import (
    build_escape_set,
    difference_avoiding_set,
    is_difference_avoiding,
)
from .duality.centers import (
    CenterStream,
    HPoint,
    directions_from_centers,
    ivan_residual,
)
from .duality.transfer import (
    dual_direction,
    phi,
    phi_inverse,
    sphere_image_basis,
    sphere_image_extra,
)
from .exceptions import InputError, SpraylabError
from .geometry.mesh import SphereFamily, mesh_of_family
from .geometry.spheres import (
    Sphere,
    SphereKind,
    classify,
    infinite_intersection_witness,
    intersect_chain,
    intersect_spheres,
    make_nondegenerate_chain,
    sphere_within,
)

logger = logging.getLogger(__name__)

# A check returns None when it passes and a failure message otherwise
Check = Callable[[], Optional[str]]
Suite = Callable[[np.random.Generator, float], Iterator[Tuple[str, Check]]]


@dataclass
class SuiteResult:
    """Outcome of one suite: instance count, failures and wall time."""

    name: str
    seed: int
    instances: int = 0
    failures: List[Dict[str, Any]] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures


def _count(base: int, scale: float) -> int:
    return max(1, int(round(base * scale)))


# --------------------------
# Sphere geometry
# --------------------------
def _finiteness(rng: np.random.Generator, scale: float) -> Iterator[Tuple[str, Check]]:
    for d in range(2, 7):
        for i in range(_count(500, scale)):
            centers = sampling.random_general_position_points(rng, d, d)
            quadrances = [
                sampling.random_rational(rng, positive=True) for _ in range(d)
            ]
            spheres = [Sphere.in_space(c, q) for c, q in zip(centers, quadrances)]

            def check(spheres=spheres) -> Optional[str]:
                kind = classify(intersect_chain(spheres))
                if kind.is_finite:
                    return None
                return f"chain of {len(spheres)} spheres is {kind.value}"

            yield f"d={d}#{i}", check


def _nondegenerate_chain(
    rng: np.random.Generator, k: int, d: int
) -> Tuple[List[QVector], List[Sphere]]:
    centers = sampling.random_general_position_points(rng, k, d)
    seed = sampling.random_rational(rng, positive=True)
    quadrances = make_nondegenerate_chain(centers, seed, d) + [seed]
    return centers, [Sphere.in_space(c, q) for c, q in zip(centers, quadrances)]


def _dimension(rng: np.random.Generator, scale: float) -> Iterator[Tuple[str, Check]]:
    for d in range(3, 7):
        for k in range(2, d):
            for i in range(_count(100, scale)):
                centers, spheres = _nondegenerate_chain(rng, k, d)

                def check(centers=centers, spheres=spheres, k=k, d=d) -> Optional[str]:
                    result = intersect_chain(spheres)
                    span = affine_span(centers)
                    if result.dim != d - (k - 1):
                        return f"flat of dimension {result.dim}, expected {d - (k - 1)}"
                    if not result.ambient.orthogonal_to(span):
                        return "intersection flat is not orthogonal to the centers"
                    if not span.contains(result.center):
                        return "intersection center is not on the span of the centers"
                    return None

                yield f"k={k},d={d}#{i}", check


def _nondegenerate(
    rng: np.random.Generator, scale: float
) -> Iterator[Tuple[str, Check]]:
    for d in range(2, 6):
        for k in range(1, d):
            for i in range(_count(100, scale)):
                _, spheres = _nondegenerate_chain(rng, k, d)

                def check(spheres=spheres) -> Optional[str]:
                    kind = classify(intersect_chain(spheres))
                    if kind is SphereKind.INFINITE:
                        return None
                    return f"nondegenerate chain is {kind.value}"

                yield f"k={k},d={d}#{i}", check


def _witness(rng: np.random.Generator, scale: float) -> Iterator[Tuple[str, Check]]:
    for d in (3, 4, 5):
        for i in range(_count(100, scale)):
            span_dim = int(rng.integers(1, d - 1))
            points = sampling.random_dependent_points(rng, d, span_dim, d + 1)

            def check(points=points) -> Optional[str]:
                spheres = infinite_intersection_witness(points)
                common = intersect_spheres(spheres)
                if classify(common) is not SphereKind.INFINITE:
                    return f"witness intersection is {classify(common).value}"
                for j, s in enumerate(spheres):
                    if not sphere_within(common, s.center, s.quadrance):
                        return f"intersection is not contained in witness sphere {j}"
                return None

            yield f"d={d},span={span_dim}#{i}", check


def _distinct_quadrances(
    rng: np.random.Generator, seeded: List[Fraction], n: int
) -> Tuple[Fraction, ...]:
    values = list(seeded)
    while len(values) < n:
        q = sampling.random_rational(rng, positive=True)
        if q not in values:
            values.append(q)
    return tuple(values)


def _mesh(rng: np.random.Generator, scale: float) -> Iterator[Tuple[str, Check]]:
    for d in (2, 3, 4):
        for i in range(_count(2, scale)):
            centers = sampling.random_well_placed_centers(rng, d, d)
            seed = sampling.random_rational(rng, positive=True)
            chain = make_nondegenerate_chain(centers[: d - 1], seed, d) + [seed]
            families = [
                SphereFamily(c, _distinct_quadrances(rng, chain[j : j + 1], 8))
                for j, c in enumerate(centers)
            ]

            def check(families=families, d=d) -> Optional[str]:
                report = mesh_of_family(families, d)
                if report.mesh != d:
                    return f"mesh {report.mesh}, expected {d}"
                witness = report.witness_tuple_for_r_minus_1
                if witness is None:
                    return "no witness for r = d - 1"
                common = intersect_spheres([families[j].sphere(q) for j, q in witness])
                if classify(common) is not SphereKind.INFINITE:
                    return f"witness tuple intersection is {classify(common).value}"
                return None

            yield f"d={d}#{i}", check


# --------------------------
# Duality
# --------------------------
def _distinct_hpoints(rng: np.random.Generator, n: int, d: int) -> List[HPoint]:
    seen: Set[HPoint] = set()
    points: List[HPoint] = []
    while len(points) < n:
        x = sampling.random_hpoint(rng, d)
        if x not in seen:
            seen.add(x)
            points.append(x)
    return points


def _duality(rng: np.random.Generator, scale: float) -> Iterator[Tuple[str, Check]]:
    for d in (2, 3, 4):
        for i in range(_count(20, scale)):
            cfg = sampling.random_center_config(rng, d, n_extra=2)

            def check(cfg=cfg, d=d) -> Optional[str]:
                n_samples = _count(170, scale)
                samples = [sampling.random_hpoint(rng, d) for _ in range(n_samples)]
                for x in samples:
                    if phi_inverse(cfg, phi(cfg, x)) != x:
                        return f"roundtrip failed at {x}"
                for idx, center in enumerate(cfg.centers):
                    rho = sampling.random_rational(rng, coord_range=60, positive=True)
                    on = sampling.random_points_on_sphere_image(
                        rng, center, rho, _count(15, scale), d
                    )
                    if idx < d:
                        image = sphere_image_basis(cfg, idx + 1, rho)
                    else:
                        dd = dual_direction(cfg, idx - d)
                        image = sphere_image_extra(cfg, idx - d, dd, rho)
                    for x in on + samples:
                        on_sphere = x.distance_sq_to(center) == rho
                        if on_sphere != image.contains(phi(cfg, x).r):
                            return f"membership mismatch for center {idx + 1} at {x}"
                for j, q in enumerate(cfg.extra_centers):
                    dd = dual_direction(cfg, j)
                    for _ in range(100):
                        x = sampling.random_vector(rng, d - 1)
                        if ivan_residual(cfg, dd, q, x) != 0:
                            return (
                                f"dependency identity fails for extra center {j} "
                                f"at {x}"
                            )
                return None

            yield f"d={d}#{i}", check


def _directions(rng: np.random.Generator, scale: float) -> Iterator[Tuple[str, Check]]:
    for d in (3, 4):
        for i in range(_count(100, scale)):
            cfg = sampling.random_center_config(rng, d, n_extra=5)

            def check(cfg=cfg, d=d) -> Optional[str]:
                dirs = directions_from_centers(cfg)
                violation = vector_position_violation(dirs, d)
                if violation is None:
                    return None
                return f"directions {violation} are dependent"

            yield f"d={d}#{i}", check


# --------------------------
# Covering
# --------------------------
def _drizzle(rng: np.random.Generator, scale: float) -> Iterator[Tuple[str, Check]]:
    d = 3
    n = _count(10_000, scale)

    def hyperplane_check() -> Optional[str]:
        points = sampling.random_distinct_points(rng, n, d)
        dirs = DirectionStream.moment_curve(d)
        assignment = greedy_drizzle_assign(points, dirs, d)
        if not verify_hyperplane_cover(assignment, dirs).is_drizzle:
            return "greedy cover is not a hyperplane drizzle"
        if max(assignment.part_of) > (n - 1) * (d - 1) + 1:
            return f"part index {max(assignment.part_of)} above the blocking bound"
        return None

    def pullback_check() -> Optional[str]:
        stream = CenterStream(d)
        radii = [phi(stream.basis, x).r for x in _distinct_hpoints(rng, n, d)]
        dirs = DirectionStream.from_centers(stream)
        assignment = greedy_drizzle_assign(radii, dirs, d)
        if not verify_hyperplane_cover(assignment, dirs).is_drizzle:
            return "greedy cover of E^d is not a hyperplane drizzle"
        cfg = stream.config(assignment.n_parts)
        cover = pullback_drizzle_cover(cfg, assignment, dirs)
        return None if cover.report.is_drizzle else "pulled-back cover is not a drizzle"

    def space_check() -> Optional[str]:
        points = sampling.random_distinct_points(rng, _count(1_000, scale), d)
        cover = drizzle_cover_space(points, CenterStream(d))
        return None if cover.report.is_drizzle else "space cover is not a drizzle"

    yield "hyperplane", hyperplane_check
    yield "pullback", pullback_check
    yield "space", space_check


def _random_directions(rng: np.random.Generator, n: int, d: int) -> List[QVector]:
    dirs: List[QVector] = []
    for _ in range(config.RANDOM["MAX_REJECTIONS"]):
        if len(dirs) == n:
            return dirs
        u = sampling.random_vector(rng, d, coord_range=5, max_denominator=3)
        if extends_general_position_vectors(dirs, u, d):
            dirs.append(u)
    raise InputError(f"Could not draw {n} directions in general position")


def _zsets(rng: np.random.Generator, scale: float) -> Iterator[Tuple[str, Check]]:
    for i in range(_count(1000, scale)):
        if i % 2 == 0:
            size = int(rng.integers(1, 7))
            X = sorted({sampling.random_rational(rng) for _ in range(size)})
            epsilon = sampling.random_rational(rng, positive=True)
            m = int(rng.integers(1, 7))

            def check(X=X, epsilon=epsilon, m=m) -> Optional[str]:
                S = difference_avoiding_set(X, epsilon, m)
                if len(S) != m or not is_difference_avoiding(S, X):
                    return f"{S} is not a difference-avoiding set of size {m} for {X}"
                if any(abs(s) >= epsilon for s in S):
                    return f"{S} leaves (-{epsilon}, {epsilon})"
                return None

            yield f"avoiding#{i}", check
        else:
            d = int(rng.integers(3, 5))
            dirs = _random_directions(rng, int(rng.integers(d - 1, 3 * (d - 1) + 1)), d)
            sizes = [int(rng.integers(1, 3)) for _ in range(d)]
            spread = int(rng.integers(1, 4))

            def check(dirs=dirs, sizes=sizes, spread=spread, d=d) -> Optional[str]:
                z = build_escape_set(dirs, 1, sizes, spread)
                # one spread for the base or line, one per inductive layer
                layers = 1 if z.kind == "line" else z.depth() - 1
                expected = spread ** layers
                for n in sizes:
                    expected *= n
                if len(z) != expected or len(set(z.points)) != len(z):
                    return (
                        f"Z-set has {len(set(z.points))} distinct points, "
                        f"expected {expected}"
                    )
                return None

            yield f"escape-set,d={d},n={len(dirs)}#{i}", check


def _escape(rng: np.random.Generator, scale: float) -> Iterator[Tuple[str, Check]]:
    d = 3
    dirs = [QVector.unit(d, i) for i in range(d)] + [QVector.of(1, 1, 1)]
    domain = GridDomain.cube(d, 9, step=1, origin=-4)
    z = build_escape_set(dirs, 8, (3, 3, 3), 2, step=1)
    grid = list(domain.points())

    def all_covered() -> Optional[str]:
        full = PointAssignment(tuple(grid), (1,) * len(grid), 1)
        translates = [QVector.zero(d)]
        outcome = escape_search(full, dirs[:1], z, translates, domain)
        if isinstance(outcome, Witness):
            return "a fully covered grid produced a witness"
        return None

    yield "all-covered", all_covered

    for i in range(_count(50, scale)):
        t = int(rng.integers(1, 3))
        translates = [
            QVector(tuple(Fraction(int(x)) for x in rng.integers(-2, 3, size=d)))
            for _ in range(20)
        ]

        def check(t=t, translates=translates) -> Optional[str]:
            cover = adversarial_cover(grid, dirs, t)
            if not verify_hyperplane_cover(cover, dirs).is_within(t):
                return f"adversarial cover exceeds multiplicity {t}"
            outcome = escape_search(cover, dirs, z, translates, domain)
            if not isinstance(outcome, Witness):
                return None
            if outcome.point in cover.covered() or not domain.contains(outcome.point):
                return f"witness {outcome.point} is covered or outside the domain"
            if outcome.point - outcome.translate not in set(z.points):
                return (
                    f"witness {outcome.point} is not in translate "
                    f"{outcome.translate} + Z"
                )
            return None

        yield f"t={t}#{i}", check


SUITES: Dict[str, Suite] = {
    "finiteness": _finiteness,
    "dimension": _dimension,
    "nondegenerate": _nondegenerate,
    "witness": _witness,
    "mesh": _mesh,
    "duality": _duality,
    "directions": _directions,
    "drizzle": _drizzle,
    "zsets": _zsets,
    "escape": _escape,
}


def run_suite(
    name: str,
    seed: Optional[int] = None,
    scale: float = 1.0,
    progress: Optional[bool] = None,
) -> SuiteResult:
    """
    Run one verification suite.

    Args:
        name: Suite name (see SUITES)
        seed: Random seed; SPRAYLAB_SEED overrides it
        scale: Multiplier for the instance counts
        progress: Force the tqdm bar on or off

    Returns:
        SuiteResult; every failure records the seed and instance label
    """
    if name not in SUITES:
        raise InputError(f"Unknown suite {name!r}; choose from {sorted(SUITES)}")
    if scale <= 0:
        raise InputError("scale must be positive")
    seed = config.resolve_seed(seed)
    rng = np.random.default_rng(seed)
    result = SuiteResult(name=name, seed=seed)
    show = config.PROGRESS["ENABLED"] if progress is None else progress
    start = time.perf_counter()

    for label, check in tqdm(SUITES[name](rng, scale), desc=name, disable=not show):
        result.instances += 1
        try:
            message = check()
        except SpraylabError as e:
            message = f"{type(e).__name__}: {e}"
        if message is not None:
            logger.warning(f"[{name}] {label}: {message}")
            result.failures.append(
                {"seed": seed, "instance": label, "message": message}
            )

    result.elapsed = time.perf_counter() - start
    logger.info(
        f"Suite {name}: {result.instances} instances, "
        f"{len(result.failures)} failures, {result.elapsed:.2f}s"
    )
    return result


def run_all(
    seed: Optional[int] = None, scale: float = 1.0, progress: Optional[bool] = None
) -> List[SuiteResult]:
    """Run every suite in SUITES order with the same seed."""
    return [run_suite(name, seed, scale, progress) for name in SUITES]
