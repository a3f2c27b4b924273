import json

import pytest

from spraylab import cli, config, harness
from spraylab.exceptions import InvariantViolation

UNIT_SPHERES = {
    "spheres": [
        {"center": [0, 0, 0], "quadrance": 1},
        {"center": [1, 0, 0], "quadrance": 1},
        {"center": [0, 1, 0], "quadrance": 1},
    ],
    "extra_center": [2, -1, 0],
}
PLANE_CENTERS = {"d": 3, "basis_centers": [[0, 0, 0], [1, 0, 0], [0, 1, 0]]}


@pytest.fixture
def run(tmp_path):
    """Run the CLI with a report file; returns (exit code, parsed report or None)."""

    def invoke(*args):
        out = tmp_path / "report.json"
        if out.exists():
            out.unlink()
        code = cli.main(["--quiet", "-o", str(out)] + [str(a) for a in args])
        report = json.loads(out.read_text(encoding="utf-8")) if out.exists() else None
        return code, report

    return invoke


class TestGpCheck:
    def test_collinear_points(self, run, write_json):
        path = write_json("points", {"points": [[0, 0], [1, 0], [2, 0]]})
        code, report = run("gp-check", path)
        assert code == 1
        assert report["result"] == {
            "mode": "points",
            "general_position": False,
            "violation": [0, 1, 2],
        }

    def test_well_placed(self, run, write_json):
        square = [[0, 0, 0], [1, 0, 0], [0, 1, 0], [1, 1, 0]]
        path = write_json("points", {"points": square})
        code, report = run("gp-check", "--mode", "well-placed", path)
        assert code == 0
        assert report["result"]["hyperplane"] == {
            "normal": ["0", "0", "1"],
            "offset": "0",
        }
        assert list(report["manifest"]["input_hashes"]) == [str(path)]

    def test_vectors(self, run, write_json):
        path = write_json("vectors", {"vectors": [[1, 0], [0, 1], [1, 1]]})
        code, report = run("gp-check", "--mode", "vectors", path)
        assert code == 0
        assert report["result"]["general_position"]


class TestSpheres:
    def test_chain(self, run, write_json):
        code, report = run("spheres", "chain", write_json("spheres", UNIT_SPHERES))
        assert code == 0
        result = report["result"]
        assert result["center"] == ["1/2", "1/2", "0"]
        assert result["quadrance"] == "1/2"
        assert result["classify"] == "PairOfPoints"

    def test_enclose(self, run, write_json):
        code, report = run("spheres", "enclose", write_json("spheres", UNIT_SPHERES))
        assert code == 0
        assert report["result"]["quadrance"] == "5"

    def test_witness_on_general_position_points(self, run, write_json):
        path = write_json("points", {"points": [[0, 0, 0], [1, 0, 0], [0, 1, 0]]})
        code, report = run("spheres", "witness", path)
        assert code == 2
        assert report is None

    def test_mesh(self, run, write_json):
        families = {
            "families": [
                {"center": [0, 0], "quadrances": [1, 2]},
                {"center": [1, 0], "quadrances": [1, 3]},
            ]
        }
        code, report = run("spheres", "mesh", write_json("families", families))
        assert code == 0
        assert report["result"]["mesh"] == 2


class TestDuality:
    def test_phi_inverse_outside_e(self, run, write_json):
        path = write_json("cfg", {**PLANE_CENTERS, "radii": [1, 2, 100]})
        code, report = run("duality", "phi-inv", path)
        assert code == 1
        assert report["result"]["error"] == "NotInE"
        assert report["result"]["details"] == {"height_sq": "-2400"}

    def test_phi(self, run, write_json):
        path = write_json("cfg", {**PLANE_CENTERS, "point": [0, 0, 1]})
        code, report = run("duality", "phi", path)
        assert code == 0
        assert report["result"]["radii"] == ["1", "2", "2"]

    def test_ivan(self, run, write_json):
        path = write_json("cfg", {**PLANE_CENTERS, "q": [1, 1]})
        code, report = run("duality", "ivan", path)
        assert code == 0
        assert report["result"]["u"] == ["-1", "1", "1"]
        assert report["result"]["identity_holds"]

    def test_basis_change(self, run, write_json):
        doc = {"vectors": [[1, 2], [0, 1]], "points": [[2, -1]]}
        code, report = run("duality", "basis-change", write_json("vectors", doc))
        assert code == 0
        assert report["result"] == {
            "matrix": [["1", "2"], ["0", "1"]],
            "images": [["0", "-1"]],
        }


class TestCover:
    violating = {"points": [[0, 0], [0, 1]], "parts": [1, 1], "directions": [[1, 0]]}

    def test_verify_exceeds_threshold(self, run, write_json):
        code, report = run("cover", "verify", write_json("assignment", self.violating))
        assert code == 1
        assert report["result"]["max_multiplicity"] == 2

    def test_verify_threshold(self, run, write_json):
        path = write_json("assignment", self.violating)
        code, _ = run("cover", "verify", "--threshold", 2, path)
        assert code == 0

    square = [[0, 0], [1, 0], [0, 1], [1, 1]]

    def test_drizzle_uses_directions_dual_to_centers(self, run, write_json):
        path = write_json("points", {"points": self.square})
        code, report = run("cover", "drizzle", path)
        assert code == 0
        result = report["result"]
        assert result["assignment"]["parts"] == [1, 1, 2, 3]
        assert result["directions"] == [["1", "0"], ["0", "1"], ["-1", "2"]]
        assert result["report"]["is_drizzle"]
        assert report["manifest"]["seed"] is None

    def test_drizzle_with_given_centers(self, run, write_json):
        centers = {"d": 2, "basis_centers": [[0, 0], [1, 0]], "extra_centers": [[3, 0]]}
        path = write_json("points", {"points": self.square, "config": centers})
        code, report = run("cover", "drizzle", path)
        assert code == 0
        assert report["result"]["assignment"]["parts"] == [1, 1, 2, 3]
        assert report["result"]["directions"][2] == ["-2", "3"]

    def test_drizzle_with_given_directions(self, run, write_json):
        doc = {"points": self.square, "directions": [[1, 0], [1, 1], [1, 2]]}
        code, report = run("cover", "drizzle", write_json("points", doc))
        assert code == 0
        assert report["result"]["assignment"]["parts"] == [1, 1, 2, 2]

    def test_pullback(self, run, write_json):
        doc = {
            "points": [[1, 2, 2], [1, 1, 2]],
            "parts": [1, 2],
            "config": PLANE_CENTERS,
        }
        code, report = run("cover", "pullback", write_json("assignment", doc))
        assert code == 0
        assert report["result"]["report"]["is_drizzle"]

    def test_pullback_that_is_not_a_drizzle(self, run, write_json):
        # both radii vectors lie at squared distance 1 from the first center
        doc = {
            "points": [[1, 2, 2], [1, 1, 2]],
            "parts": [1, 1],
            "config": PLANE_CENTERS,
        }
        code, report = run("cover", "pullback", write_json("assignment", doc))
        assert code == 1
        assert report["result"]["report"]["max_multiplicity"] == 2
        assert not report["result"]["report"]["is_drizzle"]

    def test_zset_difference_avoiding(self, run, write_json):
        doc = {"kind": "difference-avoiding", "X": [0, 1], "epsilon": 1, "m": 3}
        code, report = run("cover", "zset", write_json("zset", doc))
        assert code == 0
        assert report["result"]["S"] == ["-1/73", "0", "1/73"]

    def test_escape_all_covered(self, run, write_json):
        doc = {
            "directions": [[1, 0, 0]],
            "zset": {
                "kind": "base",
                "d": 3,
                "v": [1, 1, 0],
                "S": [0, "1/3"],
                "X": [[0, 1], [0, 1], [0, 1]],
            },
            "translates": [[0, 0, 0]],
            "domain": {
                "lower": [0, 0, 0],
                "upper": ["4/3", "4/3", "4/3"],
                "step": "1/3",
            },
            "adversarial": {"t": 25},
        }
        code, report = run("cover", "escape", write_json("escape", doc))
        assert code == 1
        assert report["result"]["outcome"] == "Exhausted"
        assert report["result"]["cover_size"] == 125

    def test_project(self, run, write_json):
        doc = {
            "points": [[1, 1], [2, -1]],
            "parts": [1, 2],
            "centers": [[0, 1], [0, -1]],
            "hyperplane": {"normal": [0, 1], "offset": 0},
            "glue": True,
        }
        code, report = run("cover", "project", write_json("assignment", doc))
        assert code == 0
        assert report["result"]["centers"] == [["0", "0"]]


class TestSeeds:
    def test_seed_flag(self, run):
        code, report = run("cover", "drizzle", "--random", 5, "--dim", 2, "--seed", 5)
        assert code == 0
        assert report["manifest"]["seed"] == 5

    def test_environment_overrides_flag(self, run, monkeypatch):
        code, first = run("cover", "drizzle", "--random", 5, "--dim", 2, "--seed", 11)
        monkeypatch.setenv(config.RANDOM["SEED_ENV_VAR"], "11")
        code, second = run("cover", "drizzle", "--random", 5, "--dim", 2, "--seed", 5)
        assert code == 0
        assert second["manifest"]["seed"] == 11
        assert second["result"] == first["result"]

    def test_bad_environment_seed(self, run, monkeypatch):
        monkeypatch.setenv(config.RANDOM["SEED_ENV_VAR"], "abc")
        code, _ = run("cover", "drizzle", "--random", 5, "--dim", 2)
        assert code == 2


class TestExitCodes:
    def test_schema_violation(self, run, write_json):
        path = write_json("spheres", {"spheres": [{"center": [0, 0.5]}]})
        code, report = run("spheres", "chain", path)
        assert code == 2
        assert report is None

    def test_missing_input(self, run):
        assert run("gp-check")[0] == 2

    def test_unknown_command(self, run):
        assert run("transmogrify")[0] == 2

    def test_internal_error(self, run, monkeypatch, write_json):
        def broken(args):
            raise InvariantViolation("broken on purpose")

        monkeypatch.setitem(cli.COMMANDS, "gp-check", broken)
        assert run("gp-check", write_json("points", {"points": [[0, 0]]}))[0] == 3

    def test_report_to_stdout(self, write_json, capsys):
        path = write_json("points", {"points": [[0, 0], [1, 1]]})
        code = cli.main(["--quiet", "gp-check", str(path)])
        assert code == 0
        report = json.loads(capsys.readouterr().out)
        assert report["manifest"]["tool"] == config.PROJECT_NAME
        assert report["result"]["general_position"]


class TestSuite:
    def test_single_suite(self, run):
        code, report = run("suite", "mesh", "--scale", "0.001", "--seed", 5)
        assert code == 0
        assert [r["name"] for r in report["result"]] == ["mesh"]
        assert report["manifest"]["seed"] == 5

    def test_all_suites(self, run):
        code, report = run("suite", "all", "--scale", "0.001", "--seed", 5)
        assert code == 0
        assert [r["name"] for r in report["result"]] == list(harness.SUITES)
        assert all(r["passed"] for r in report["result"])
