import pytest

from spraylab.exceptions import DimensionMismatch, DuplicatePoint, InputError
from spraylab.geometry.mesh import SphereFamily, mesh_of_family
from spraylab.geometry.spheres import SphereKind, classify, intersect_spheres

from .strategies import v


def test_two_circle_families():
    report = mesh_of_family(
        [SphereFamily(v(0, 0), (1, 2)), SphereFamily(v(1, 0), (1, 3))], 2
    )
    assert report.mesh == 2
    assert report.has_finite_mesh
    assert report.n_families == 2


def test_well_placed_families_in_space():
    families = [
        SphereFamily(v(0, 0, 0), (2, 5)),
        SphereFamily(v(1, 0, 0), (1, 7)),
        SphereFamily(v(0, 1, 0), (1, 4)),
    ]
    report = mesh_of_family(families, 3)
    assert report.mesh == 3
    assert report.checked[3] == 8
    witness = report.witness_tuple_for_r_minus_1
    assert witness is not None and len(witness) == 2
    spheres = [families[i].sphere(q) for i, q in witness]
    assert classify(intersect_spheres(spheres)) is SphereKind.INFINITE


def test_collinear_families_have_no_finite_mesh():
    # every sphere passes through the circle x = 0, y^2 + z^2 = 1
    families = [
        SphereFamily(v(0, 0, 0), (1,)),
        SphereFamily(v(1, 0, 0), (2,)),
        SphereFamily(v(2, 0, 0), (5,)),
    ]
    report = mesh_of_family(families, 3)
    assert report.mesh is None
    assert not report.has_finite_mesh
    assert report.witness_tuple_for_r_minus_1 is None
    assert sorted(report.infinite_tuples) == [1, 2, 3]


def test_shared_center():
    with pytest.raises(DuplicatePoint):
        mesh_of_family([SphereFamily(v(0, 0), (1,)), SphereFamily(v(0, 0), (2,))], 2)


def test_wrong_dimension():
    with pytest.raises(DimensionMismatch):
        mesh_of_family([SphereFamily(v(0, 0), (1,))], 3)


@pytest.mark.parametrize("quadrances", [(0,), (-1, 2), (1, 1)])
def test_family_quadrances_must_be_positive_and_distinct(quadrances):
    with pytest.raises(InputError):
        SphereFamily(v(0, 0), quadrances)
