#!/usr/bin/env python3
"""Command-line interface for spraylab.

Every subcommand reads a UTF-8 JSON document, runs one library operation and
writes a JSON report ``{"manifest": ..., "result": ...}`` to stdout or to
``--output``. Logs go to stderr.

Exit codes: 0 success, 1 verified negative result, 2 input error,
3 internal error.
"""

import argparse
import logging
import sys
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional

from . import config, sampling
from .core.affine import AffineSubspace
from .core.position import (
    is_well_placed,
    point_position_violation,
    vector_position_violation,
)
from .covering.drizzle import (
    drizzle_cover_space,
    greedy_drizzle_assign,
    pullback_drizzle_cover,
)
from .covering.escape import Witness, adversarial_cover, escape_search
from .covering.streams import DirectionStream
from .covering.verify import (
    project_assignment,
    verify_hyperplane_cover,
    verify_spray_cover,
)
from .covering.zsets import (
    build_escape_set,
    difference_avoiding_set,
    is_difference_avoiding,
)
from .duality.centers import (
    CenterStream,
    RadiiVector,
    directions_from_centers,
    extra_direction,
    ivan_coefficients,
    ivan_residual,
    normalize_direction,
    u_space,
)
from .duality.transfer import basis_change, dualize, phi, phi_inverse
from .exceptions import InputError, InternalError, NegativeResult, SchemaValidationError
from .geometry.mesh import mesh_of_family
from .geometry.spheres import (
    enclose_from_dependent_center,
    infinite_intersection_witness,
    intersect_chain,
    intersect_spheres,
)
from .serialization import (
    RunManifest,
    assignment_from_json,
    config_from_json,
    domain_from_json,
    dump_report,
    family_from_json,
    hpoint_from_json,
    hyperplane_from_json,
    load_document,
    rational_from_json,
    sphere_from_json,
    to_json,
    validate,
    vector_from_json,
    vectors_from_json,
    zset_from_json,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_INPUT = 2
EXIT_INTERNAL = 3

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'


@dataclass
class Outcome:
    """What a subcommand hands back to main: report body and exit code."""

    result: Any
    exit_code: int = EXIT_OK
    randomized: bool = False


def _require(doc: Dict[str, Any], key: str, command: str) -> Any:
    if key not in doc:
        raise InputError(f"{command} needs '{key}' in the input document")
    return doc[key]


def _input_path(args: argparse.Namespace) -> Path:
    if args.input is None:
        raise InputError(f"{args.command} needs an input file")
    return Path(args.input)


# --------------------------
# gp-check
# --------------------------
def cmd_gp_check(args: argparse.Namespace) -> Outcome:
    if args.mode == "vectors":
        doc = load_document(_input_path(args), "vectors")
        vectors = vectors_from_json(doc["vectors"])
        d = args.ambient_dim or doc.get("ambient_dim") or vectors[0].dim
        violation = vector_position_violation(vectors, d)
        ok = violation is None
        result = {
            "mode": "vectors",
            "general_position": ok,
            "violation": None if ok else list(violation),
        }
        return Outcome(result, EXIT_OK if ok else EXIT_NEGATIVE)

    doc = load_document(_input_path(args), "points")
    points = vectors_from_json(doc["points"])
    d = args.ambient_dim or doc.get("ambient_dim") or points[0].dim
    if args.mode == "well-placed":
        verdict = is_well_placed(points, d)
        result = {"mode": "well-placed", **to_json(verdict)}
        return Outcome(result, EXIT_OK if verdict.well_placed else EXIT_NEGATIVE)
    violation = point_position_violation(points, AffineSubspace.full(d))
    ok = violation is None
    result = {
        "mode": "points",
        "general_position": ok,
        "violation": None if ok else list(violation),
    }
    return Outcome(result, EXIT_OK if ok else EXIT_NEGATIVE)


# --------------------------
# spheres
# --------------------------
def cmd_spheres(args: argparse.Namespace) -> Outcome:
    if args.action == "mesh":
        doc = load_document(_input_path(args), "families")
        families = [family_from_json(f) for f in doc["families"]]
        d = doc.get("dim", families[0].center.dim)
        report = mesh_of_family(
            families, d, max_workers=args.workers, progress=args.progress or None
        )
        return Outcome(report, EXIT_OK if report.has_finite_mesh else EXIT_NEGATIVE)

    if args.action == "witness":
        doc = load_document(_input_path(args), "points")
        seed_quadrance = doc.get(
            "seed_quadrance", config.SPHERES["DEFAULT_SEED_QUADRANCE"]
        )
        spheres = infinite_intersection_witness(
            vectors_from_json(doc["points"]),
            rational_from_json(seed_quadrance),
            allow_finite=doc.get("allow_finite", False),
        )
        return Outcome({"spheres": spheres, "intersection": intersect_spheres(spheres)})

    doc = load_document(_input_path(args), "spheres")
    spheres = [sphere_from_json(s) for s in doc["spheres"]]
    if args.action == "intersect":
        return Outcome(intersect_spheres(spheres))
    if args.action == "chain":
        return Outcome(intersect_chain(spheres))
    extra = vector_from_json(_require(doc, "extra_center", "spheres enclose"))
    return Outcome(enclose_from_dependent_center(spheres, extra))


# --------------------------
# duality
# --------------------------
def cmd_duality(args: argparse.Namespace) -> Outcome:
    if args.action == "basis-change":
        doc = load_document(_input_path(args), "vectors")
        matrix = basis_change(vectors_from_json(doc["vectors"]))
        images = [matrix.apply(p) for p in vectors_from_json(doc.get("points", []))]
        return Outcome({"matrix": matrix, "images": images})

    doc = load_document(_input_path(args), "center_config")
    cfg = config_from_json(doc)
    closure = doc.get("closure", False)

    if args.action == "phi":
        x = hpoint_from_json(_require(doc, "point", "duality phi"))
        return Outcome({"point": x, "radii": phi(cfg, x, closure=closure)})
    if args.action == "phi-inv":
        r = RadiiVector(vector_from_json(_require(doc, "radii", "duality phi-inv")))
        return Outcome({"radii": r, "point": phi_inverse(cfg, r, closure=closure)})
    if args.action == "uspace":
        q = vector_from_json(_require(doc, "q", "duality uspace"))
        basis = u_space(cfg, q)
        direction = normalize_direction(basis[0]) if len(basis) == 1 else None
        return Outcome({"q": q, "basis": basis, "direction": direction})
    if args.action == "ivan":
        q = vector_from_json(_require(doc, "q", "duality ivan"))
        u = vector_from_json(doc["u"]) if "u" in doc else extra_direction(cfg, q)
        dd = ivan_coefficients(cfg, q, u)
        checks = list(cfg.basis_points) + [cfg.base_of(q)]
        holds = all(ivan_residual(cfg, dd, q, x) == 0 for x in checks)
        return Outcome({**to_json(dd), "identity_holds": holds})

    index = _require(doc, "center_index", "duality dualize")
    quadrance = rational_from_json(_require(doc, "quadrance", "duality dualize"))
    hyperplane, dd = dualize(cfg, index, quadrance)
    return Outcome(
        {
            "center_index": index,
            "quadrance": quadrance,
            "hyperplane": hyperplane,
            "dual_direction": dd,
        }
    )


# --------------------------
# cover
# --------------------------
def _drizzle(args: argparse.Namespace) -> Outcome:
    directions = None
    if args.random is not None:
        if args.dim is None:
            raise InputError("cover drizzle --random needs --dim")
        rng = sampling.make_rng(config.resolve_seed(args.seed))
        points = sampling.random_distinct_points(rng, args.random, args.dim)
        d = args.dim
    else:
        doc = load_document(_input_path(args), "points")
        points = vectors_from_json(doc["points"])
        d = args.dim or points[0].dim
        if "directions" in doc:
            given = vectors_from_json(doc["directions"])
            directions = DirectionStream.from_list(given, d)
        elif "config" in doc:
            cfg = config_from_json(doc["config"])
            directions = DirectionStream.from_list(directions_from_centers(cfg), d)

    if args.space:
        cover = drizzle_cover_space(
            points, CenterStream(d), progress=args.progress or None
        )
        return Outcome(cover, randomized=args.random is not None)
    dirs = directions or DirectionStream.from_centers(CenterStream(d))
    assignment = greedy_drizzle_assign(points, dirs, d, progress=args.progress or None)
    report = verify_hyperplane_cover(assignment, dirs)
    result = {
        "assignment": assignment,
        "directions": dirs.prefix(assignment.n_parts),
        "report": report,
    }
    return Outcome(result, randomized=args.random is not None)


def _pullback(args: argparse.Namespace) -> Outcome:
    doc = load_document(_input_path(args), "assignment")
    assignment = assignment_from_json(doc)
    if "config" in doc:
        cfg = config_from_json(doc["config"])
    else:
        d = _require(doc, "d", "cover pullback")
        cfg = CenterStream(d).config(assignment.n_parts)
    dirs = vectors_from_json(doc["directions"]) if "directions" in doc else None
    cover = pullback_drizzle_cover(cfg, assignment, dirs)
    return Outcome(cover, EXIT_OK if cover.report.is_drizzle else EXIT_NEGATIVE)


def _verify(args: argparse.Namespace) -> Outcome:
    doc = load_document(_input_path(args), "assignment")
    assignment = assignment_from_json(doc)
    if "directions" in doc:
        dirs = vectors_from_json(doc["directions"])
        report = verify_hyperplane_cover(assignment, dirs)
    elif "centers" in doc:
        report = verify_spray_cover(vectors_from_json(doc["centers"]), assignment)
    elif "config" in doc:
        report = verify_spray_cover(config_from_json(doc["config"]), assignment)
    else:
        raise InputError("cover verify needs 'directions', 'centers' or 'config'")
    code = EXIT_OK if report.is_within(args.threshold) else EXIT_NEGATIVE
    return Outcome(report, code)


def _zset_value(data: Dict[str, Any]):
    if data["kind"] == "escape":
        return build_escape_set(
            vectors_from_json(data["directions"]),
            rational_from_json(data["epsilon"]),
            data["factor_sizes"],
            data["spread_size"],
            rational_from_json(data["step"]) if "step" in data else None,
        )
    return zset_from_json(data)


def _zset(args: argparse.Namespace) -> Outcome:
    doc = load_document(_input_path(args), "zset")
    if doc["kind"] == "difference-avoiding":
        X = [rational_from_json(x) for x in doc["X"]]
        step = rational_from_json(doc["step"]) if "step" in doc else None
        epsilon = rational_from_json(doc["epsilon"])
        S = difference_avoiding_set(X, epsilon, doc["m"], step)
        return Outcome(
            {"X": X, "S": S, "difference_avoiding": is_difference_avoiding(S, X)}
        )
    return Outcome(_zset_value(doc))


def _escape(args: argparse.Namespace) -> Outcome:
    doc = load_document(_input_path(args), "escape")
    validate(doc["zset"], "zset")
    z = _zset_value(doc["zset"])
    dirs = vectors_from_json(doc["directions"])
    translates = vectors_from_json(doc["translates"])
    domain = domain_from_json(doc["domain"])
    if "assignment" in doc:
        cover = assignment_from_json(doc["assignment"])
    else:
        adversarial = doc["adversarial"]
        if adversarial.get("over", "grid") == "grid":
            cover = adversarial_cover(domain, dirs, adversarial["t"])
        else:
            points = dict.fromkeys(
                p + x for p in translates for x in z.points if domain.contains(p + x)
            )
            cover = adversarial_cover(list(points), dirs, adversarial["t"])
    outcome = escape_search(
        cover,
        dirs,
        z,
        translates,
        domain,
        max_workers=args.workers,
        progress=args.progress or None,
    )
    result = {**to_json(outcome), "cover_size": len(cover), "zset_size": len(z)}
    return Outcome(result, EXIT_OK if isinstance(outcome, Witness) else EXIT_NEGATIVE)


def _project(args: argparse.Namespace) -> Outcome:
    doc = load_document(_input_path(args), "assignment")
    assignment = assignment_from_json(doc)
    centers = vectors_from_json(_require(doc, "centers", "cover project"))
    h = hyperplane_from_json(_require(doc, "hyperplane", "cover project"))
    projected, projected_centers = project_assignment(
        assignment,
        centers,
        h,
        mode=doc.get("mode", "orthogonal"),
        glue=doc.get("glue", False),
    )
    report = verify_spray_cover(projected_centers, projected)
    return Outcome(
        {"assignment": projected, "centers": projected_centers, "report": report}
    )


COVER_ACTIONS: Dict[str, Callable[[argparse.Namespace], Outcome]] = {
    "drizzle": _drizzle,
    "pullback": _pullback,
    "verify": _verify,
    "zset": _zset,
    "escape": _escape,
    "project": _project,
}


def cmd_cover(args: argparse.Namespace) -> Outcome:
    return COVER_ACTIONS[args.action](args)


# --------------------------
# suite / fixtures
# --------------------------
def cmd_suite(args: argparse.Namespace) -> Outcome:
    from .harness import run_all, run_suite

    progress = args.progress or None
    if args.name == "all":
        results = run_all(args.seed, args.scale, progress)
    else:
        results = [run_suite(args.name, args.seed, args.scale, progress)]
    body = [
        {
            "name": r.name,
            "seed": r.seed,
            "instances": r.instances,
            "failures": r.failures,
            "passed": r.passed,
        }
        for r in results
    ]
    failed = any(not r.passed for r in results)
    return Outcome(body, EXIT_NEGATIVE if failed else EXIT_OK, randomized=True)


def cmd_fixtures(args: argparse.Namespace) -> Outcome:
    from .pipeline import run_fixtures

    outputs = run_fixtures(output_path=args.output_dir, update=args.update)
    return Outcome(outputs, EXIT_NEGATIVE if outputs["mismatches"] else EXIT_OK)


COMMANDS: Dict[str, Callable[[argparse.Namespace], Outcome]] = {
    "gp-check": cmd_gp_check,
    "spheres": cmd_spheres,
    "duality": cmd_duality,
    "cover": cmd_cover,
    "suite": cmd_suite,
    "fixtures": cmd_fixtures,
}


# --------------------------
# Parser
# --------------------------
def _global_flags(parser: argparse.ArgumentParser, suppress: bool) -> None:
    """Flags accepted both before and after the subcommand."""

    def default(value):
        return argparse.SUPPRESS if suppress else value

    parser.add_argument(
        "--seed",
        type=int,
        default=default(None),
        help=f"Random seed ({config.RANDOM['SEED_ENV_VAR']} overrides it)",
    )
    parser.add_argument(
        "-o",
        "--output",
        type=str,
        default=default(None),
        help="Write the report here instead of stdout",
    )
    parser.add_argument(
        "--verbose", action="store_true", default=default(False), help="Debug logging"
    )
    parser.add_argument(
        "--quiet",
        action="store_true",
        default=default(False),
        help="Only warnings and errors",
    )
    parser.add_argument(
        "--progress",
        action="store_true",
        default=default(False),
        help="Show progress bars on long loops",
    )
    parser.add_argument(
        "--timing",
        action="store_true",
        default=default(False),
        help="Record wall time in the manifest",
    )
    parser.add_argument(
        "--workers",
        type=int,
        default=default(None),
        help="Worker processes for mesh and escape searches",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spraylab",
        description=(
            "Exact-arithmetic toolkit for sphere intersections, sprays and "
            "drizzle covers"
        ),
    )
    _global_flags(parser, suppress=False)
    common = argparse.ArgumentParser(add_help=False)
    _global_flags(common, suppress=True)
    commands = parser.add_subparsers(dest="command", required=True)

    gp = commands.add_parser(
        "gp-check", parents=[common], help="General position and well-placed checks"
    )
    gp.add_argument("input", nargs="?", help="Points or vectors JSON")
    gp.add_argument(
        "--mode", choices=["points", "vectors", "well-placed"], default="points"
    )
    gp.add_argument("--ambient-dim", type=int, default=None)

    spheres = commands.add_parser(
        "spheres", help="Sphere intersections, witnesses and meshes"
    )
    spheres_actions = spheres.add_subparsers(dest="action", required=True)
    for action, help_text in [
        ("intersect", "Intersect spheres with distinct centers"),
        ("chain", "Chained intersection of spheres with centers in general position"),
        ("enclose", "Sphere around a dependent center containing a chain intersection"),
        ("witness", "Spheres with infinite intersection around dependent points"),
        ("mesh", "Mesh of finite sphere families"),
    ]:
        sub = spheres_actions.add_parser(action, parents=[common], help=help_text)
        sub.add_argument("input", nargs="?")

    duality = commands.add_parser(
        "duality", help="The Phi transform and dual directions"
    )
    duality_actions = duality.add_subparsers(dest="action", required=True)
    for action, help_text in [
        ("phi", "Squared distances to the basis centers"),
        ("phi-inv", "Point of the upper half-space with given squared distances"),
        ("uspace", "Dependency space of a center"),
        ("ivan", "Coefficients of the dependency identity"),
        ("dualize", "Hyperplane image of a sphere around a center"),
        ("basis-change", "Matrix sending hyperplanes orthogonal to u_i to axes"),
    ]:
        sub = duality_actions.add_parser(action, parents=[common], help=help_text)
        sub.add_argument("input", nargs="?")

    cover = commands.add_parser(
        "cover", help="Drizzle covers, Z-sets and escape searches"
    )
    cover_actions = cover.add_subparsers(dest="action", required=True)
    drizzle = cover_actions.add_parser(
        "drizzle", parents=[common], help="Greedy drizzle cover of points"
    )
    drizzle.add_argument("input", nargs="?")
    drizzle.add_argument(
        "--random",
        type=int,
        default=None,
        metavar="N",
        help="Cover N random rational points",
    )
    drizzle.add_argument(
        "--dim", type=int, default=None, help="Dimension of the random points"
    )
    drizzle.add_argument(
        "--space",
        action="store_true",
        help="Cover by drizzles around centers instead of hyperplanes",
    )
    for action, help_text in [
        ("pullback", "Pull a hyperplane drizzle over E^d back to sprays"),
        ("zset", "Build or check a Z-set or a difference-avoiding set"),
        ("escape", "Search for a translate of a Z-set escaping a cover"),
        ("project", "Project a spray cover into a hyperplane"),
    ]:
        sub = cover_actions.add_parser(action, parents=[common], help=help_text)
        sub.add_argument("input", nargs="?")
    verify = cover_actions.add_parser(
        "verify", parents=[common], help="Multiplicity audit of a cover"
    )
    verify.add_argument("input", nargs="?")
    verify.add_argument(
        "--threshold",
        type=int,
        default=1,
        help="Largest accepted multiplicity (default: 1)",
    )

    from .harness import SUITES

    suite = commands.add_parser(
        "suite", parents=[common], help="Randomized verification suites"
    )
    suite.add_argument("name", choices=sorted(SUITES) + ["all"])
    suite.add_argument(
        "--scale", type=float, default=1.0, help="Multiplier for the instance counts"
    )

    fixtures = commands.add_parser(
        "fixtures",
        parents=[common],
        help="Regenerate worked examples and compare to golden data",
    )
    fixtures.add_argument("--output-dir", type=str, default=None)
    fixtures.add_argument(
        "--update", action="store_true", help="Rewrite the golden file"
    )
    return parser


def _configure_logging(args: argparse.Namespace) -> None:
    if args.verbose:
        level = logging.DEBUG
    elif args.quiet:
        level = logging.WARNING
    else:
        level = logging.INFO
    logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr, force=True)


def _negative_result(e: NegativeResult) -> Dict[str, Any]:
    return {"error": type(e).__name__, "message": str(e), "details": to_json(e.details)}


def main(argv: Optional[List[str]] = None) -> int:
    """Run one subcommand; returns the exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    _configure_logging(args)

    start = time.perf_counter()
    try:
        outcome = COMMANDS[args.command](args)
    except NegativeResult as e:
        logger.info(f"Negative result: {e}")
        outcome = Outcome(_negative_result(e), EXIT_NEGATIVE)
    except SchemaValidationError as e:
        logger.error(str(e))
        for message in e.errors:
            logger.error(f"- {message}")
        return EXIT_INPUT
    except InputError as e:
        logger.error(f"{type(e).__name__}: {e}")
        return EXIT_INPUT
    except InternalError as e:
        logger.error(f"Internal error: {e}", exc_info=True)
        return EXIT_INTERNAL

    inputs = [args.input] if getattr(args, "input", None) else []
    seed = config.resolve_seed(args.seed) if outcome.randomized else None
    manifest = RunManifest.for_inputs(inputs, seed=seed)
    if args.timing or config.REPORTS["INCLUDE_TIMING"]:
        manifest.timing = {"total": time.perf_counter() - start}
    dump_report(outcome.result, manifest, args.output)
    return outcome.exit_code


if __name__ == "__main__":
    raise SystemExit(main())
