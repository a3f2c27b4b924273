import io
import json
from fractions import Fraction

import pytest

from spraylab import config
from spraylab.core.affine import Hyperplane
from spraylab.covering.assignment import PointAssignment
from spraylab.covering.escape import Exhausted
from spraylab.covering.zsets import z_set_base, z_set_inductive
from spraylab.duality.centers import HPoint
from spraylab.exceptions import InputError, SchemaValidationError
from spraylab.geometry.spheres import Sphere
from spraylab.serialization import (
    RunManifest,
    assignment_from_json,
    dump_report,
    hash_file,
    hpoint_from_json,
    load_document,
    render_json,
    sphere_from_json,
    to_json,
    validate,
    zset_from_json,
)

from .strategies import v


class TestSchemas:
    def test_valid_points(self):
        validate({"points": [[0, "1/2"], ["-3", "0.25"]]}, "points")

    def test_every_error_is_reported(self):
        with pytest.raises(SchemaValidationError) as e:
            validate({"points": [[0, 0.5], []]}, "points")
        assert len(e.value.errors) == 2
        assert all(message.startswith("points.") for message in e.value.errors)

    def test_missing_key(self):
        with pytest.raises(SchemaValidationError) as e:
            validate({"spheres": []}, "points")
        assert e.value.errors[0].startswith("<root>")

    def test_unknown_schema(self):
        with pytest.raises(InputError):
            validate({}, "nonsense")

    def test_load_document(self, write_json):
        path = write_json("assignment", {"points": [[0, 0]], "parts": [1]})
        assert load_document(path, "assignment")["parts"] == [1]

    def test_invalid_json(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{points: ", encoding="utf-8")
        with pytest.raises(InputError):
            load_document(path, "points")

    def test_missing_file(self, tmp_path):
        with pytest.raises(InputError):
            load_document(tmp_path / "absent.json", "points")


class TestEncoding:
    def test_rationals_are_text(self):
        assert to_json(Fraction(-3, 6)) == "-1/2"
        assert to_json(v(1, "2/4")) == ["1", "1/2"]
        assert to_json(Hyperplane(v(0, 0, 1), 0)) == {
            "normal": ["0", "0", "1"],
            "offset": "0",
        }

    def test_sphere(self, unit_spheres):
        data = to_json(unit_spheres[0])
        assert data["classify"] == "Infinite"
        assert data["quadrance"] == "1"
        assert data["ambient"]["dim"] == 3

    def test_exhausted(self):
        assert to_json(Exhausted(1, 16, 25)) == {
            "outcome": "Exhausted",
            "n_translates": 1,
            "n_checked": 16,
            "max_multiplicity": 25,
        }

    def test_zset_tree(self):
        base = z_set_base(3, v(1, 1, 0), [0, "1/3"], [[0, 1]] * 3)
        data = to_json(z_set_inductive(base, v(0, 0, 1), [0, 2]))
        assert data["kind"] == "inductive"
        assert data["size"] == 32
        assert data["inner"]["size"] == 16
        assert data["inner"]["S"] == ["0", "1/3"]
        assert len(data["points"]) == 32
        assert "points" not in data["inner"]

    def test_unencodable(self):
        with pytest.raises(TypeError):
            to_json(object())


class TestDecoding:
    def test_sphere_defaults_to_full_space(self):
        s = sphere_from_json({"center": [1, 2], "quadrance": "9/4"})
        assert s == Sphere.in_space(v(1, 2), Fraction(9, 4))

    def test_hpoint_forms(self):
        hp = hpoint_from_json({"base": [1, 2], "height_sq": "1/4"})
        assert hp == HPoint(v(1, 2), Fraction(1, 4))
        assert hpoint_from_json([1, 2, -3]) == HPoint(v(1, 2), 9, lower=True)

    def test_assignment_with_mixed_points(self):
        doc = {"points": [[0, 0, 1], {"base": [0, 0], "height_sq": 1}], "parts": [1, 2]}
        a = assignment_from_json(doc)
        assert a.n_parts == 2
        assert isinstance(a.points[1], HPoint)

    def test_assignment_needs_parts(self):
        with pytest.raises(InputError):
            assignment_from_json({"points": [[0, 0]]})

    def test_zset_tree_rebuilds(self):
        base = z_set_base(3, v(1, 1, 0), [0, "1/3"], [[0, 1]] * 3)
        rebuilt = zset_from_json(json.loads(render_json(to_json(base))))
        assert rebuilt.points == base.points

    def test_unknown_zset_kind(self):
        with pytest.raises(InputError):
            zset_from_json({"kind": "spiral"})


class TestReports:
    def test_manifest(self, write_json):
        path = write_json("points", {"points": [[0, 0]]})
        manifest = RunManifest.for_inputs([path], seed=7)
        data = manifest.to_json()
        assert data["tool"] == config.PROJECT_NAME
        assert data["version"] == config.PROJECT_VERSION
        assert data["seed"] == 7
        assert data["input_hashes"] == {str(path): hash_file(path)}
        assert "timing" not in data

    def test_render_is_canonical(self):
        expected = '{\n  "a": [\n    1\n  ],\n  "b": 1\n}\n'
        assert render_json({"b": 1, "a": [1]}) == expected

    def test_dump_to_stream_and_file(self, tmp_path):
        result = PointAssignment((v(0, 0),), (1,))
        stream = io.StringIO()
        text = dump_report(result, RunManifest(), stream)
        assert stream.getvalue() == text
        out = tmp_path / "nested" / "report.json"
        dump_report(result, RunManifest(), out)
        report = json.loads(out.read_text(encoding="utf-8"))
        assert report["result"] == {"points": [["0", "0"]], "parts": [1], "n_parts": 1}
        assert report["manifest"]["seed"] is None
