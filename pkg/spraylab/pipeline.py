"""Regenerate the worked examples and compare them with the committed golden data."""

import json
import logging
import os
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Union

from . import config
from .core.affine import AffineSubspace, Hyperplane, affine_span
from .core.linalg import null_space, rank, solve_linear
from .core.position import (
    is_general_position_points,
    is_general_position_vectors,
    is_well_placed,
)
from .core.vectors import QMatrix, QVector
from .covering.assignment import PointAssignment
from .covering.drizzle import greedy_drizzle_assign
from .covering.escape import GridDomain, escape_search
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
    z_set_base,
    z_set_inductive,
)
from .duality.centers import (
    CenterConfig,
    CenterStream,
    HPoint,
    RadiiVector,
    directions_from_centers,
    extra_direction,
    ivan_coefficients,
    ivan_residual,
    u_space,
)
from .duality.transfer import basis_change, phi, phi_inverse, sphere_image_basis
from .exceptions import DisjointnessPreconditionFailed, NotInE
from .geometry.mesh import SphereFamily, mesh_of_family
from .geometry.spheres import (
    Sphere,
    classify,
    enclose_from_dependent_center,
    infinite_intersection_witness,
    intersect_chain,
    intersect_sphere_hyperplane,
    intersect_spheres,
    make_nondegenerate_chain,
)
from .serialization import render_json, to_json

logger = logging.getLogger(__name__)

GOLDEN_PATH = Path(__file__).parent / "data" / "golden.json"

Fixtures = Dict[str, Any]


def setup_directory_structure(output_path: Union[str, Path]) -> Dict[str, Path]:
    """
    Set up the directory structure for fixture outputs.

    Args:
        output_path: Base path for all outputs

    Returns:
        Dictionary of paths for the different output types
    """
    output_base = Path(output_path)
    dirs = {
        "root": output_base,
        "reports": output_base / config.DIRECTORY_STRUCTURE["REPORTS"],
        "fixtures": output_base / config.DIRECTORY_STRUCTURE["FIXTURES"],
        "inputs": output_base / config.DIRECTORY_STRUCTURE["FIXTURES"] / "inputs",
        "suites": output_base / config.DIRECTORY_STRUCTURE["SUITES"],
    }
    for dir_path in dirs.values():
        os.makedirs(dir_path, exist_ok=True)
    return dirs


def _v(*values) -> QVector:
    return QVector.of(*values)


def _sphere_summary(s: Sphere) -> Dict[str, Any]:
    return {
        "center": to_json(s.center),
        "quadrance": to_json(s.quadrance),
        "dim": s.dim,
        "classify": classify(s).value,
    }


# --------------------------
# Step 1: exact core
# --------------------------
def exact_core_examples() -> Fixtures:
    plane = affine_span([_v(0, 0, 0), _v(1, 0, 0), _v(0, 1, 0)])
    return {
        "rank_dependent_rows": rank(
            QMatrix.from_rows([[1, 0, 0], [0, 1, 0], [1, 1, 0]])
        ),
        "null_space_dependency_rows": to_json(
            null_space(QMatrix.from_rows([[-1, 0, -1], [-1, -1, 0]]))
        ),
        "solve_difference_system": to_json(
            solve_linear(QMatrix.from_rows([[-2, 0], [0, -2]]), _v(1, 1))
        ),
        "moment_curve_vectors_general_position": is_general_position_vectors(
            [_v(1, t, t * t) for t in range(4)], 3
        ),
        "square_points_general_position": is_general_position_points(
            [_v(0, 0), _v(1, 0), _v(0, 1), _v(1, 1)], AffineSubspace.full(2)
        ),
        "coplanar_square_well_placed": to_json(
            is_well_placed([_v(0, 0, 0), _v(1, 0, 0), _v(0, 1, 0), _v(1, 1, 0)], 3)
        ),
        "project_onto_diagonal": to_json(
            affine_span([_v(0, 0), _v(1, 1)]).project(_v(1, 0))
        ),
        "span_of_three_points": plane.dim,
    }


# --------------------------
# Step 2: sphere geometry
# --------------------------
def sphere_geometry_examples() -> Fixtures:
    unit = [Sphere.in_space(c, 1) for c in (_v(0, 0, 0), _v(1, 0, 0), _v(0, 1, 0))]
    chain = intersect_chain(unit)
    pair = intersect_chain(
        [Sphere.in_space(_v(0, 0, 0), 9), Sphere.in_space(_v(5, 0, 0), 16)]
    )
    on_both = all(
        _v("9/5", "12/5", 0).distance_sq(c) == q
        for c, q in ((_v(0, 0, 0), 9), (_v(5, 0, 0), 16))
    )
    coplanar = [_v(0, 0, 0), _v(1, 0, 0), _v(0, 1, 0), _v(1, 1, 0)]
    flat_witness = infinite_intersection_witness(
        [_v(0, 0, 0, 0), _v(1, 0, 0, 0), _v(0, 1, 0, 0), _v(1, 1, 0, 0), _v(2, 3, 0, 0)]
    )
    well_placed_families = [
        SphereFamily(_v(0, 0, 0), (2, 5)),
        SphereFamily(_v(1, 0, 0), (1, 7)),
        SphereFamily(_v(0, 1, 0), (1, 4)),
    ]
    mesh = mesh_of_family(well_placed_families, 3)
    two_circles = mesh_of_family(
        [SphereFamily(_v(0, 0), (1, 2)), SphereFamily(_v(1, 0), (1, 3))], 2
    )
    return {
        "cut_by_plane": _sphere_summary(
            intersect_sphere_hyperplane(
                Sphere.in_space(_v(0, 0, 0), 9), Hyperplane(_v(0, 0, 1), 2)
            )
        ),
        "pair_three_four_five": {**_sphere_summary(pair), "point_on_both": on_both},
        "chain_of_three_unit_spheres": _sphere_summary(chain),
        "chain_of_two_unit_spheres": _sphere_summary(intersect_chain(unit[:2])),
        "enclose_from_extra_center": to_json(
            enclose_from_dependent_center(unit, _v(2, -1, 0)).quadrance
        ),
        "nondegenerate_pair": to_json(
            make_nondegenerate_chain([_v(0, 0, 0), _v(1, 0, 0)], 1)
        ),
        "coplanar_witness_allow_finite": _sphere_summary(
            intersect_spheres(
                infinite_intersection_witness(coplanar, allow_finite=True)
            )
        ),
        "plane_witness_in_four_dimensions": _sphere_summary(
            intersect_spheres(flat_witness)
        ),
        "mesh_two_circles": two_circles.mesh,
        "mesh_well_placed_families": mesh.mesh,
    }


# --------------------------
# Step 3: duality
# --------------------------
def duality_examples() -> Fixtures:
    cfg = CenterConfig(3, (_v(0, 0, 0), _v(1, 0, 0), _v(0, 1, 0)))
    x = HPoint(_v(0, 0), 1)
    dd = ivan_coefficients(cfg, _v(1, 1), _v(1, -1, -1))
    try:
        phi_inverse(cfg, RadiiVector(_v(1, 2, 100)))
        not_in_e = None
    except NotInE as e:
        not_in_e = {"error": "NotInE", "height_sq": to_json(e.details["height_sq"])}
    matrix = basis_change([_v(1, 2), _v(0, 1)])
    stream = CenterStream(4)
    moment_directions = directions_from_centers(stream.config(13))
    return {
        "u_space_of_one_one": to_json(u_space(cfg, _v(1, 1))),
        "direction_of_one_one": to_json(extra_direction(cfg, _v(1, 1))),
        "direction_of_first_center": to_json(extra_direction(cfg, _v(0, 0))),
        "ivan_coefficients": {
            "b": to_json(dd.b),
            "c": to_json(dd.c),
            "residual_at_origin": to_json(ivan_residual(cfg, dd, _v(1, 1), _v(0, 0))),
        },
        "phi_above_first_center": to_json(phi(cfg, x)),
        "phi_inverse_roundtrip": to_json(phi_inverse(cfg, RadiiVector(_v(1, 2, 2)))),
        "phi_inverse_not_in_e": not_in_e,
        "basis_image_contains_phi": sphere_image_basis(cfg, 1, 1).contains(
            phi(cfg, x).r
        ),
        "basis_change_matrix": to_json(matrix),
        "basis_change_image": to_json(matrix.apply(_v(2, -1))),
        "directions_with_extra_center": to_json(
            directions_from_centers(cfg.with_extra([_v(1, 1, 0)]))
        ),
        "moment_curve_directions": {
            "count": len(moment_directions),
            "general_position": is_general_position_vectors(moment_directions, 4),
        },
    }


# --------------------------
# Step 4: covering
# --------------------------
def covering_examples() -> Fixtures:
    S = difference_avoiding_set([0, 1], 1, 3)
    X = [[0, 1]] * 3
    base = z_set_base(3, _v(1, 1, 0), [0, "1/3"], X)
    try:
        z_set_base(3, _v(1, 1, 0), [0, 1], X)
        violation = None
    except DisjointnessPreconditionFailed as e:
        violation = {
            "error": "DisjointnessPreconditionFailed",
            "clash": to_json(e.details["clash"]),
        }
    lattice_dirs = [_v(1, 0, 0), _v(0, 1, 0), _v(0, 0, 1), _v(1, 1, 1)]
    lattice = build_escape_set(lattice_dirs, 8, (3, 3, 3), 2, step=1)

    domain = GridDomain.cube(3, 5, step="1/3")
    grid = list(domain.points())
    everything = PointAssignment(tuple(grid), (1,) * len(grid), 1)
    origin = [_v(0, 0, 0)]

    square = [_v(0, 0), _v(1, 0), _v(0, 1), _v(1, 1)]
    greedy = greedy_drizzle_assign(square, DirectionStream.moment_curve(2), 2)
    nothing = PointAssignment.empty()
    violating = PointAssignment((_v(0, 0), _v(0, 1)), (1, 1))
    symmetric = PointAssignment((_v(1, 0), _v(-1, 0)), (1, 1))
    projected, centers = project_assignment(
        PointAssignment((_v(1, 1), _v(2, -1)), (1, 2)),
        [_v(0, 1), _v(0, -1)],
        Hyperplane(_v(0, 1), 0),
        glue=True,
    )
    return {
        "difference_avoiding_zero_one": {
            "S": to_json(S),
            "avoiding": is_difference_avoiding(S, [0, 1]),
        },
        "base_zset_size": len(base),
        "base_zset_violation": violation,
        "inductive_zset_size": len(z_set_inductive(base, _v(0, 0, 1), [0, 2, 4])),
        "lattice_escape_set": {
            "size": len(lattice),
            "kind": lattice.kind,
            "depth": lattice.depth(),
        },
        "escape_all_covered": to_json(
            escape_search(everything, lattice_dirs[:1], base, origin, domain)
        ),
        "escape_empty_cover": to_json(
            escape_search(nothing, lattice_dirs[:1], base, origin, domain)
        ),
        "greedy_square": {
            "parts": list(greedy.part_of),
            "drizzle": verify_hyperplane_cover(
                greedy, DirectionStream.moment_curve(2)
            ).is_drizzle,
        },
        "verify_violating_hyperplane": to_json(
            verify_hyperplane_cover(violating, [_v(1, 0)])
        ),
        "verify_symmetric_sphere": verify_spray_cover(
            [_v(0, 0)], symmetric
        ).max_multiplicity,
        "project_and_glue": {
            "parts": list(projected.part_of),
            "centers": to_json(centers),
            "n_parts": projected.n_parts,
        },
    }


# --------------------------
# Step 5: command line
# --------------------------
CLI_INPUTS: Dict[str, Dict[str, Any]] = {
    "coplanar_points": {"points": [[0, 0, 0], [1, 0, 0], [0, 1, 0], [1, 1, 0]]},
    "collinear_points": {"points": [[0, 0], [1, 0], [2, 0]]},
    "unit_spheres": {
        "spheres": [
            {"center": [0, 0, 0], "quadrance": 1},
            {"center": [1, 0, 0], "quadrance": 1},
            {"center": [0, 1, 0], "quadrance": 1},
        ],
        "extra_center": [2, -1, 0],
    },
    "centers_phi_inverse": {
        "d": 3,
        "basis_centers": [[0, 0, 0], [1, 0, 0], [0, 1, 0]],
        "radii": [1, 2, 100],
    },
    "centers_ivan": {
        "d": 3,
        "basis_centers": [[0, 0, 0], [1, 0, 0], [0, 1, 0]],
        "q": [1, 1],
        "u": [1, -1, -1],
    },
    "violating_assignment": {
        "points": [[0, 0], [0, 1]],
        "parts": [1, 1],
        "directions": [[1, 0]],
    },
    "escape_all_covered": {
        "directions": [[1, 0, 0]],
        "zset": {
            "kind": "base",
            "d": 3,
            "v": [1, 1, 0],
            "S": [0, "1/3"],
            "X": [[0, 1], [0, 1], [0, 1]],
        },
        "translates": [[0, 0, 0]],
        "domain": {"lower": [0, 0, 0], "upper": ["4/3", "4/3", "4/3"], "step": "1/3"},
        "adversarial": {"t": 25},
    },
}

CLI_RUNS: Dict[str, List[str]] = {
    "gp_check_well_placed": ["gp-check", "--mode", "well-placed", "{coplanar_points}"],
    "gp_check_collinear": ["gp-check", "{collinear_points}"],
    "spheres_chain": ["spheres", "chain", "{unit_spheres}"],
    "spheres_enclose": ["spheres", "enclose", "{unit_spheres}"],
    "duality_phi_inverse": ["duality", "phi-inv", "{centers_phi_inverse}"],
    "duality_ivan": ["duality", "ivan", "{centers_ivan}"],
    "cover_verify_violating": ["cover", "verify", "{violating_assignment}"],
    "cover_escape_all_covered": ["cover", "escape", "{escape_all_covered}"],
}


def cli_examples(dirs: Dict[str, Path]) -> Fixtures:
    """Run the CLI on committed inputs; keep exit codes and result bodies."""
    from .cli import main

    paths = {}
    for name, document in CLI_INPUTS.items():
        paths[name] = dirs["inputs"] / f"{name}.json"
        paths[name].write_text(render_json(document), encoding="utf-8")

    results = {}
    for name, argv in CLI_RUNS.items():
        output = dirs["reports"] / f"{name}.json"
        if output.exists():
            output.unlink()
        args = [a.format(**{k: str(p) for k, p in paths.items()}) for a in argv]
        code = main(["--quiet", "-o", str(output)] + args)
        body = None
        if output.exists():
            body = json.loads(output.read_text(encoding="utf-8"))["result"]
        if isinstance(body, dict):
            # messages carry free text; only structured fields are pinned
            body.pop("message", None)
        results[name] = {"exit_code": code, "result": body}
    return results


def _compare(generated: Fixtures, golden: Fixtures) -> List[str]:
    names = sorted(set(generated) | set(golden))
    return [name for name in names if generated.get(name) != golden.get(name)]


def run_fixtures(
    output_path: Optional[Union[str, Path]] = None, update: bool = False
) -> Dict[str, Any]:
    """
    Regenerate every worked example and compare with the golden set.

    Args:
        output_path: Base path for all outputs (default: config.DEFAULT_OUTPUT_DIR)
        update: Rewrite the golden file with the regenerated values

    Returns:
        Dictionary with the written fixture paths and the mismatching example names
    """
    output_base = Path(output_path) if output_path else Path(config.DEFAULT_OUTPUT_DIR)
    dirs = setup_directory_structure(output_base)
    logger.info(f"Regenerating fixtures in {dirs['fixtures']}")

    steps: List[tuple] = [
        ("exact_core", "Step 1: Exact core examples", exact_core_examples),
        (
            "sphere_geometry",
            "Step 2: Sphere geometry examples",
            sphere_geometry_examples,
        ),
        ("duality", "Step 3: Duality examples", duality_examples),
        ("covering", "Step 4: Covering examples", covering_examples),
        ("cli", "Step 5: Command-line examples", lambda: cli_examples(dirs)),
    ]
    generated: Dict[str, Fixtures] = {}
    outputs: Dict[str, str] = {}
    for key, message, build in steps:
        logger.info(message)
        build: Callable[[], Fixtures]
        generated[key] = json.loads(render_json(build()))
        path = dirs["fixtures"] / f"{key}.json"
        path.write_text(render_json(generated[key]), encoding="utf-8")
        outputs[key] = str(path)

    if update:
        GOLDEN_PATH.write_text(render_json(generated), encoding="utf-8")
        logger.info(f"Golden file updated: {GOLDEN_PATH}")
        return {"outputs": outputs, "mismatches": []}

    golden = json.loads(GOLDEN_PATH.read_text(encoding="utf-8"))
    mismatches = []
    for key in generated:
        differing = _compare(generated[key], golden.get(key, {}))
        mismatches += [f"{key}.{name}" for name in differing]
    if mismatches:
        logger.warning(
            f"{len(mismatches)} fixtures differ from the golden set: "
            f"{', '.join(mismatches)}"
        )
    else:
        logger.info("All fixtures match the golden set")
    return {"outputs": outputs, "mismatches": mismatches}
