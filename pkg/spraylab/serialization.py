"""JSON encoding of domain objects, schema-validated decoding, run manifests.

Every rational is written in its canonical "num/den" text form, so reports
are exact and diff-able. Input documents are validated against the schemas in
``spraylab/schemas`` before decoding.
"""

import hashlib
import json
import logging
import sys
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import lru_cache, singledispatch
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, TextIO, Union

from jsonschema import Draft202012Validator

from . import config
from .core.affine import AffineSubspace, Hyperplane
from .core.position import WellPlacedVerdict
from .core.rational import as_rational, format_rational
from .core.vectors import QMatrix, QVector
from .covering.assignment import CoverReport, PartReport, PointAssignment
from .covering.drizzle import PulledBackCover
from .covering.escape import Exhausted, GridDomain, Witness
from .covering.zsets import (
    BaseNode,
    InductiveNode,
    LineNode,
    MappedNode,
    ZSet,
    z_set_base,
    z_set_inductive,
    z_set_line,
    z_set_mapped,
)
from .duality.centers import CenterConfig, DualDirection, HPoint, RadiiVector
from .exceptions import InputError, SchemaValidationError
from .geometry.mesh import MeshReport, SphereFamily
from .geometry.spheres import Sphere, classify

logger = logging.getLogger(__name__)

SCHEMA_DIR = Path(__file__).parent / "schemas"
SCHEMAS = (
    "points",
    "vectors",
    "spheres",
    "families",
    "center_config",
    "assignment",
    "zset",
    "escape",
)


# --------------------------
# Schemas
# --------------------------
@lru_cache(maxsize=None)
def load_schema(name: str) -> Dict[str, Any]:
    if name not in SCHEMAS:
        raise InputError(f"Unknown schema {name!r}")
    with open(SCHEMA_DIR / f"{name}.schema.json", "r", encoding="utf-8") as f:
        return json.load(f)


def validate(document: Any, schema: str) -> None:
    """
    Validate a parsed document against a package schema.

    Raises:
        SchemaValidationError: With every violation, sorted by path
    """
    validator = Draft202012Validator(load_schema(schema))
    errors = sorted(
        validator.iter_errors(document), key=lambda e: list(map(str, e.path))
    )
    if errors:
        messages = [
            f"{'.'.join(str(p) for p in e.path) or '<root>'}: {e.message}"
            for e in errors
        ]
        raise SchemaValidationError(
            f"Input does not match the {schema} schema ({len(errors)} errors)", messages
        )


def load_document(path: Union[str, Path], schema: str) -> Any:
    """Read a UTF-8 JSON file and validate it."""
    try:
        with open(path, "r", encoding="utf-8") as f:
            document = json.load(f)
    except json.JSONDecodeError as e:
        raise InputError(f"{path} is not valid JSON: {e}") from e
    except OSError as e:
        raise InputError(f"Cannot read {path}: {e}") from e
    validate(document, schema)
    return document


# --------------------------
# Encoding
# --------------------------
@singledispatch
def to_json(obj: Any) -> Any:
    """Convert a domain object into JSON-ready data."""
    if obj is None or isinstance(obj, (bool, int, str)):
        return obj
    if isinstance(obj, Enum):
        return obj.value
    if isinstance(obj, dict):
        return {str(k): to_json(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_json(x) for x in obj]
    raise TypeError(f"Cannot encode {type(obj).__name__} as JSON")


@to_json.register
def _(obj: Fraction) -> str:
    return format_rational(obj)


@to_json.register
def _(obj: float) -> Any:
    # only timing values are floats
    return round(obj, 6)


@to_json.register
def _(obj: QVector) -> List[str]:
    return obj.to_strings()


@to_json.register
def _(obj: QMatrix) -> List[List[str]]:
    return obj.to_strings()


@to_json.register
def _(obj: AffineSubspace) -> Dict[str, Any]:
    return {
        "base": to_json(obj.base),
        "directions": to_json(list(obj.directions)),
        "dim": obj.dim,
    }


@to_json.register
def _(obj: Hyperplane) -> Dict[str, Any]:
    return {"normal": to_json(obj.normal), "offset": to_json(obj.offset)}


@to_json.register
def _(obj: Sphere) -> Dict[str, Any]:
    return {
        "ambient": to_json(obj.ambient),
        "center": to_json(obj.center),
        "quadrance": to_json(obj.quadrance),
        "dim": obj.dim,
        "classify": classify(obj).value,
    }


@to_json.register
def _(obj: WellPlacedVerdict) -> Dict[str, Any]:
    return {
        "well_placed": obj.well_placed,
        "hyperplane": to_json(obj.hyperplane),
        "violation": to_json(obj.violation),
    }


@to_json.register
def _(obj: SphereFamily) -> Dict[str, Any]:
    return {"center": to_json(obj.center), "quadrances": to_json(list(obj.quadrances))}


@to_json.register
def _(obj: MeshReport) -> Dict[str, Any]:
    return {
        "mesh": obj.mesh,
        "n_families": obj.n_families,
        "infinite_tuples": {
            str(r): [{"family": i, "quadrance": to_json(q)} for i, q in choice]
            for r, choice in sorted(obj.infinite_tuples.items())
        },
        "checked": {str(r): n for r, n in sorted(obj.checked.items())},
    }


@to_json.register
def _(obj: CenterConfig) -> Dict[str, Any]:
    return {
        "d": obj.d,
        "basis_centers": to_json(list(obj.basis_centers)),
        "extra_centers": to_json(list(obj.extra_centers)),
    }


@to_json.register
def _(obj: HPoint) -> Dict[str, Any]:
    return {
        "base": to_json(obj.base),
        "height_sq": to_json(obj.height_sq),
        "lower": obj.lower,
    }


@to_json.register
def _(obj: RadiiVector) -> List[str]:
    return to_json(obj.r)


@to_json.register
def _(obj: DualDirection) -> Dict[str, Any]:
    return {
        "u": to_json(obj.u),
        "b": to_json(obj.b),
        "c": to_json(obj.c),
        "extra_index": obj.extra_index,
    }


@to_json.register
def _(obj: PointAssignment) -> Dict[str, Any]:
    return {
        "points": to_json(list(obj.points)),
        "parts": list(obj.part_of),
        "n_parts": obj.n_parts,
    }


@to_json.register
def _(obj: PartReport) -> Dict[str, Any]:
    return {
        "part": obj.part,
        "size": obj.size,
        "max_multiplicity": obj.max_multiplicity,
        "histogram": {str(k): v for k, v in obj.histogram.items()},
        "worst_value": to_json(obj.worst_value),
        "worst_points": list(obj.worst_points),
    }


@to_json.register
def _(obj: CoverReport) -> Dict[str, Any]:
    return {
        "kind": obj.kind,
        "max_multiplicity": obj.max_multiplicity,
        "is_drizzle": obj.is_drizzle,
        "parts": [to_json(p) for p in obj.parts],
    }


@to_json.register
def _(obj: PulledBackCover) -> Dict[str, Any]:
    return {
        "assignment": to_json(obj.assignment),
        "centers": to_json(obj.centers),
        "report": to_json(obj.report),
    }


def _node_to_json(node) -> Dict[str, Any]:
    if isinstance(node, BaseNode):
        return {
            "kind": "base",
            "d": node.v.dim,
            "v": to_json(node.v),
            "S": to_json(node.S),
            "X": to_json(node.X),
        }
    if isinstance(node, InductiveNode):
        return {
            "kind": "inductive",
            "v": to_json(node.v),
            "S": to_json(node.S),
            "Y": to_json(node.Y),
            "inner": _zset_tree(node.inner),
        }
    if isinstance(node, LineNode):
        return {"kind": "line", "v": to_json(node.v), "S": to_json(node.S)}
    return {
        "kind": "mapped",
        "matrix": to_json(node.matrix),
        "inner": _zset_tree(node.inner),
    }


def _zset_tree(z: ZSet) -> Dict[str, Any]:
    tree = _node_to_json(z.node)
    tree["size"] = len(z)
    return tree


@to_json.register
def _(obj: ZSet) -> Dict[str, Any]:
    tree = _zset_tree(obj)
    tree["points"] = to_json(list(obj.points))
    return tree


@to_json.register
def _(obj: GridDomain) -> Dict[str, Any]:
    return {
        "lower": to_json(obj.lower),
        "upper": to_json(obj.upper),
        "step": to_json(obj.step),
    }


@to_json.register
def _(obj: Witness) -> Dict[str, Any]:
    return {
        "outcome": "Witness",
        "translate": to_json(obj.translate),
        "translate_index": obj.translate_index,
        "point": to_json(obj.point),
        "z_index": obj.z_index,
        "max_multiplicity": obj.max_multiplicity,
    }


@to_json.register
def _(obj: Exhausted) -> Dict[str, Any]:
    return {
        "outcome": "Exhausted",
        "n_translates": obj.n_translates,
        "n_checked": obj.n_checked,
        "max_multiplicity": obj.max_multiplicity,
    }


# --------------------------
# Decoding
# --------------------------
def rational_from_json(value: Any) -> Fraction:
    return as_rational(value)


def vector_from_json(values: Sequence[Any]) -> QVector:
    return QVector(tuple(rational_from_json(x) for x in values))


def vectors_from_json(values: Sequence[Sequence[Any]]) -> List[QVector]:
    return [vector_from_json(v) for v in values]


def subspace_from_json(data: Dict[str, Any]) -> AffineSubspace:
    return AffineSubspace(
        vector_from_json(data["base"]),
        tuple(vectors_from_json(data.get("directions", []))),
    )


def hyperplane_from_json(data: Dict[str, Any]) -> Hyperplane:
    return Hyperplane(
        vector_from_json(data["normal"]), rational_from_json(data["offset"])
    )


def sphere_from_json(data: Dict[str, Any]) -> Sphere:
    center = vector_from_json(data["center"])
    if "ambient" in data:
        ambient = subspace_from_json(data["ambient"])
    else:
        ambient = AffineSubspace.full(center.dim)
    return Sphere(ambient, center, rational_from_json(data["quadrance"]))


def family_from_json(data: Dict[str, Any]) -> SphereFamily:
    return SphereFamily(
        vector_from_json(data["center"]),
        tuple(rational_from_json(q) for q in data["quadrances"]),
    )


def config_from_json(data: Dict[str, Any]) -> CenterConfig:
    return CenterConfig(
        int(data["d"]),
        tuple(vectors_from_json(data["basis_centers"])),
        tuple(vectors_from_json(data.get("extra_centers", []))),
    )


def hpoint_from_json(data: Union[Sequence[Any], Dict[str, Any]]) -> HPoint:
    """An HPoint from {base, height_sq, lower} or from a full rational point."""
    if isinstance(data, dict):
        return HPoint(
            vector_from_json(data["base"]),
            rational_from_json(data["height_sq"]),
            bool(data.get("lower", False)),
        )
    return HPoint.from_point(vector_from_json(data))


def point_from_json(
    data: Union[Sequence[Any], Dict[str, Any]],
) -> Union[QVector, HPoint]:
    return hpoint_from_json(data) if isinstance(data, dict) else vector_from_json(data)


def assignment_from_json(data: Dict[str, Any]) -> PointAssignment:
    if "parts" not in data:
        raise InputError("An assignment needs a 'parts' list")
    return PointAssignment(
        tuple(point_from_json(p) for p in data["points"]),
        tuple(int(k) for k in data["parts"]),
        data.get("n_parts"),
    )


def zset_from_json(data: Dict[str, Any]) -> ZSet:
    """Rebuild a Z-set from its construction tree; every precondition is re-checked."""
    kind = data["kind"]
    if kind == "base":
        v = vector_from_json(data["v"])
        X = [[rational_from_json(x) for x in factor] for factor in data["X"]]
        S = [rational_from_json(s) for s in data["S"]]
        return z_set_base(int(data.get("d", v.dim)), v, S, X)
    if kind == "inductive":
        return z_set_inductive(
            zset_from_json(data["inner"]),
            vector_from_json(data["v"]),
            [rational_from_json(s) for s in data["S"]],
        )
    if kind == "line":
        return z_set_line(
            vector_from_json(data["v"]), [rational_from_json(s) for s in data["S"]]
        )
    if kind == "mapped":
        matrix = QMatrix(tuple(vectors_from_json(data["matrix"])))
        return z_set_mapped(zset_from_json(data["inner"]), matrix)
    raise InputError(f"Unknown Z-set kind {kind!r}")


def domain_from_json(data: Dict[str, Any]) -> GridDomain:
    return GridDomain(
        vector_from_json(data["lower"]),
        vector_from_json(data["upper"]),
        rational_from_json(data["step"]),
    )


# --------------------------
# Reports
# --------------------------
@dataclass
class RunManifest:
    """Provenance embedded in every report."""

    version: str = config.PROJECT_VERSION
    input_hashes: Dict[str, str] = field(default_factory=dict)
    seed: Optional[int] = None
    timing: Optional[Dict[str, float]] = None

    @classmethod
    def for_inputs(
        cls, paths: Sequence[Union[str, Path]], seed: Optional[int] = None
    ) -> "RunManifest":
        return cls(input_hashes={str(p): hash_file(p) for p in paths}, seed=seed)

    def to_json(self) -> Dict[str, Any]:
        data = {
            "tool": config.PROJECT_NAME,
            "version": self.version,
            "input_hashes": dict(sorted(self.input_hashes.items())),
            "seed": self.seed,
        }
        if self.timing is not None:
            data["timing"] = to_json(self.timing)
        return data


def hash_file(path: Union[str, Path]) -> str:
    """SHA-256 of a file's bytes."""
    digest = hashlib.sha256()
    with open(path, "rb") as f:
        for block in iter(lambda: f.read(65536), b""):
            digest.update(block)
    return digest.hexdigest()


def render_json(data: Any) -> str:
    """Canonical text: fixed indentation, sorted keys, trailing newline."""
    text = json.dumps(
        data,
        indent=config.REPORTS["JSON_INDENT"],
        sort_keys=config.REPORTS["SORT_KEYS"],
        ensure_ascii=False,
    )
    return text + "\n"


def dump_report(
    result: Any,
    manifest: RunManifest,
    output: Optional[Union[str, Path, TextIO]] = None,
) -> str:
    """
    Write {"manifest": ..., "result": ...} and return the text.

    Args:
        result: Domain object or JSON-ready data
        manifest: Run provenance
        output: File path, open text stream, or None for stdout
    """
    text = render_json({"manifest": manifest.to_json(), "result": to_json(result)})
    if output is None:
        sys.stdout.write(text)
    elif hasattr(output, "write"):
        output.write(text)
    else:
        path = Path(output)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
        logger.info(f"Report written to {path}")
    return text
