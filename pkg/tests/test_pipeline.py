import json

from spraylab.pipeline import GOLDEN_PATH, run_fixtures, setup_directory_structure


def test_directory_structure(tmp_path):
    dirs = setup_directory_structure(tmp_path / "out")
    assert all(path.is_dir() for path in dirs.values())


def test_fixtures_match_golden(tmp_path):
    outputs = run_fixtures(tmp_path)
    assert outputs["mismatches"] == []
    golden = json.loads(GOLDEN_PATH.read_text(encoding="utf-8"))
    assert sorted(outputs["outputs"]) == sorted(golden)
    for key, path in outputs["outputs"].items():
        with open(path, "r", encoding="utf-8") as f:
            assert json.load(f) == golden[key]
