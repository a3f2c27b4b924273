import json
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from spraylab import config
from spraylab.duality.centers import CenterConfig
from spraylab.geometry.spheres import Sphere

from .strategies import v

settings.register_profile(
    "spraylab",
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.function_scoped_fixture],
)
settings.load_profile("spraylab")


@pytest.fixture(autouse=True)
def _no_seed_override(monkeypatch):
    monkeypatch.delenv(config.RANDOM["SEED_ENV_VAR"], raising=False)


@pytest.fixture
def unit_spheres():
    return [Sphere.in_space(c, 1) for c in (v(0, 0, 0), v(1, 0, 0), v(0, 1, 0))]


@pytest.fixture
def plane_centers():
    """Basis centers (0,0,0), (1,0,0), (0,1,0) on the base hyperplane of Q^3."""
    return CenterConfig(3, (v(0, 0, 0), v(1, 0, 0), v(0, 1, 0)))


@pytest.fixture
def write_json(tmp_path):
    def write(name: str, document) -> Path:
        path = tmp_path / f"{name}.json"
        path.write_text(json.dumps(document), encoding="utf-8")
        return path

    return write
