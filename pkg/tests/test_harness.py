import pytest

from spraylab import config
from spraylab.exceptions import InputError
from spraylab.harness import SUITES, run_all, run_suite


@pytest.mark.parametrize("name", sorted(SUITES))
def test_suite_passes_at_small_scale(name):
    result = run_suite(name, seed=3, scale=0.002, progress=False)
    assert result.passed, result.failures
    assert result.instances > 0
    assert result.seed == 3


def test_environment_seed(monkeypatch):
    monkeypatch.setenv(config.RANDOM["SEED_ENV_VAR"], "17")
    assert run_suite("witness", seed=3, scale=0.002).seed == 17


@pytest.mark.parametrize("name, scale", [("everything", 1.0), ("zsets", 0)])
def test_invalid_requests(name, scale):
    with pytest.raises(InputError):
        run_suite(name, scale=scale)


def test_run_all_covers_every_suite():
    results = run_all(seed=5, scale=0.001, progress=False)
    assert [r.name for r in results] == list(SUITES)
    assert all(r.passed and r.seed == 5 for r in results)
