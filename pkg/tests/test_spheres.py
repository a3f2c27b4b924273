from fractions import Fraction

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from spraylab import sampling
from spraylab.core.affine import AffineSubspace, Hyperplane, affine_span
from spraylab.core.position import is_general_position_points
from spraylab.exceptions import (
    CenterNotInSpan,
    CentersNotGeneralPosition,
    ConcentricError,
    InputError,
    PointsActuallyInGeneralPosition,
    TooManyCenters,
    TooManySpheres,
    UnsatisfiableWitness,
)
from spraylab.geometry.spheres import (
    Sphere,
    SphereKind,
    classify,
    enclose_from_dependent_center,
    infinite_intersection_witness,
    intersect_chain,
    intersect_pair,
    intersect_sphere_hyperplane,
    intersect_spheres,
    make_nondegenerate_chain,
    sphere_within,
)

from . import strategies
from .strategies import v


def test_cut_by_plane():
    s = intersect_sphere_hyperplane(
        Sphere.in_space(v(0, 0, 0), 9), Hyperplane(v(0, 0, 1), 2)
    )
    assert s.center == v(0, 0, 2)
    assert s.quadrance == 5
    assert s.dim == 2
    assert classify(s) is SphereKind.INFINITE


def test_pair_of_three_four_five_spheres():
    h, s = intersect_pair(
        Sphere.in_space(v(0, 0, 0), 9), Sphere.in_space(v(5, 0, 0), 16)
    )
    assert s.center == v("9/5", 0, 0)
    assert s.quadrance == Fraction(144, 25)
    assert h.contains(v("9/5", "12/5", 0))
    assert s.contains(v("9/5", "12/5", 0))


def test_concentric_pair():
    with pytest.raises(ConcentricError):
        intersect_pair(Sphere.in_space(v(1, 1), 1), Sphere.in_space(v(1, 1), 2))


def test_pair_needs_two_dimensions():
    with pytest.raises(InputError):
        intersect_pair(Sphere.in_space(v(0), 1), Sphere.in_space(v(2), 1))


def test_chain_of_three_unit_spheres(unit_spheres):
    s = intersect_chain(unit_spheres)
    assert s.center == v("1/2", "1/2", 0)
    assert s.quadrance == Fraction(1, 2)
    assert s.kind is SphereKind.PAIR_OF_POINTS
    assert s.ambient.orthogonal_to(affine_span([u.center for u in unit_spheres]))


def test_chain_of_two_unit_spheres(unit_spheres):
    s = intersect_chain(unit_spheres[:2])
    assert s.center == v("1/2", 0, 0)
    assert s.quadrance == Fraction(3, 4)
    assert s.kind is SphereKind.INFINITE


@pytest.mark.parametrize(
    "far, expected",
    [(v(3, 0, 0), SphereKind.EMPTY), (v(2, 0, 0), SphereKind.POINT)],
)
def test_separated_and_tangent_spheres(far, expected):
    s = intersect_chain([Sphere.in_space(v(0, 0, 0), 1), Sphere.in_space(far, 1)])
    assert classify(s) is expected


def test_too_many_spheres(unit_spheres):
    with pytest.raises(TooManySpheres):
        intersect_chain(
            unit_spheres
            + [Sphere.in_space(v(0, 0, 1), 1), Sphere.in_space(v(1, 1, 1), 1)]
        )


def test_collinear_centers_rejected():
    spheres = [Sphere.in_space(c, 4) for c in (v(0, 0, 0), v(1, 0, 0), v(2, 0, 0))]
    with pytest.raises(CentersNotGeneralPosition):
        intersect_chain(spheres)


def test_intersect_spheres_with_dependent_centers():
    # four coplanar centers, all spheres through (0, 1, 1) and (0, 1, -1)
    spheres = [
        Sphere.in_space(c, q)
        for c, q in (
            (v(0, 0, 0), 2),
            (v(1, 0, 0), 3),
            (v(0, 1, 0), 1),
            (v(1, 1, 0), 2),
        )
    ]
    s = intersect_spheres(spheres)
    assert s.kind is SphereKind.PAIR_OF_POINTS
    assert s.center == v(0, 1, 0)
    assert s.contains(v(0, 1, 1))


def test_intersect_spheres_inconsistent():
    spheres = [Sphere.in_space(c, 1) for c in (v(0, 0), v(1, 0), v(2, 0))]
    assert intersect_spheres(spheres).kind is SphereKind.EMPTY


def test_enclose_from_extra_center(unit_spheres):
    s = enclose_from_dependent_center(unit_spheres, v(2, -1, 0))
    assert s.center == v(2, -1, 0)
    assert s.quadrance == 5
    assert sphere_within(intersect_chain(unit_spheres), s.center, s.quadrance)


def test_enclose_off_span(unit_spheres):
    with pytest.raises(CenterNotInSpan):
        enclose_from_dependent_center(unit_spheres, v(0, 0, 1))


def test_nondegenerate_pair():
    assert make_nondegenerate_chain([v(0, 0, 0), v(1, 0, 0)], 1) == [Fraction(2)]


def test_nondegenerate_chain_needs_room():
    with pytest.raises(TooManyCenters):
        make_nondegenerate_chain([v(0, 0, 0), v(1, 0, 0), v(0, 1, 0)], 1)


@given(
    seed=st.integers(min_value=0, max_value=2**32 - 1),
    d=st.integers(min_value=3, max_value=5),
    data=st.data(),
)
def test_nondegenerate_chains_are_infinite(seed, d, data):
    k = data.draw(st.integers(min_value=2, max_value=d - 1))
    rng = np.random.default_rng(seed)
    centers = sampling.random_general_position_points(
        rng, k, d, coord_range=5, max_denominator=3
    )
    quadrances = make_nondegenerate_chain(centers, 1) + [Fraction(1)]
    s = intersect_chain([Sphere.in_space(c, q) for c, q in zip(centers, quadrances)])
    assert s.kind is SphereKind.INFINITE
    assert s.dim == d - (k - 1)
    assert s.center == centers[-1]


@given(
    centers=st.lists(
        strategies.vectors(3, strategies.small_ints.map(Fraction)),
        min_size=2,
        max_size=3,
        unique=True,
    ),
    quadrances=st.lists(strategies.positive_rationals, min_size=3, max_size=3),
)
def test_chain_and_linear_intersection_agree(centers, quadrances):
    assume(is_general_position_points(centers, AffineSubspace.full(3)))
    spheres = [Sphere.in_space(c, q) for c, q in zip(centers, quadrances)]
    chained, linear = intersect_chain(spheres), intersect_spheres(spheres)
    assert classify(chained) is classify(linear)
    if chained.quadrance > 0:
        assert chained.center == linear.center
        assert chained.quadrance == linear.quadrance
        assert chained.ambient.same_as(linear.ambient)


@given(
    seed=st.integers(min_value=0, max_value=2**32 - 1),
    d=st.integers(min_value=2, max_value=5),
    data=st.data(),
)
def test_projection_keeps_general_position(seed, d, data):
    k = data.draw(st.integers(min_value=2, max_value=d))
    rng = np.random.default_rng(seed)
    centers = sampling.random_general_position_points(
        rng, k + 1, d, coord_range=5, max_denominator=3
    )
    h = Hyperplane.through(centers[k], centers[k - 1] - centers[k])
    projected = [h.project(c) for c in centers[:k]]
    assert projected[-1] == centers[k]
    assert len(set(projected)) == k
    assert is_general_position_points(projected, h.as_subspace())


@given(
    centers=st.lists(
        strategies.vectors(3, strategies.small_ints.map(Fraction)),
        min_size=2,
        max_size=3,
        unique=True,
    ),
    quadrances=st.lists(strategies.positive_rationals, min_size=3, max_size=3),
    data=st.data(),
)
def test_chain_ignores_sphere_order(centers, quadrances, data):
    assume(is_general_position_points(centers, AffineSubspace.full(3)))
    spheres = [Sphere.in_space(c, q) for c, q in zip(centers, quadrances)]
    shuffled = data.draw(st.permutations(spheres))
    first, second = intersect_chain(spheres), intersect_chain(shuffled)
    assert classify(first) is classify(second)
    if classify(first) is SphereKind.EMPTY:
        return
    assert first.center == second.center
    if first.quadrance > 0:
        assert first.quadrance == second.quadrance
        assert first.ambient.same_as(second.ambient)


class TestWitness:
    coplanar = [v(0, 0, 0), v(1, 0, 0), v(0, 1, 0), v(1, 1, 0)]

    def test_hyperplane_span_is_unsatisfiable(self):
        with pytest.raises(UnsatisfiableWitness):
            infinite_intersection_witness(self.coplanar)

    def test_finite_witness_on_request(self):
        spheres = infinite_intersection_witness(self.coplanar, allow_finite=True)
        s = intersect_spheres(spheres)
        assert s.kind is SphereKind.PAIR_OF_POINTS
        assert s.center == v(0, 1, 0)
        assert s.quadrance == 1

    def test_points_in_general_position(self):
        with pytest.raises(PointsActuallyInGeneralPosition):
            infinite_intersection_witness([v(0, 0, 0), v(1, 0, 0), v(0, 1, 0)])

    def test_plane_in_four_dimensions(self):
        points = [
            v(0, 0, 0, 0),
            v(1, 0, 0, 0),
            v(0, 1, 0, 0),
            v(1, 1, 0, 0),
            v(2, 3, 0, 0),
        ]
        spheres = infinite_intersection_witness(points)
        s = intersect_spheres(spheres)
        assert s.kind is SphereKind.INFINITE
        assert s.dim == 2
        assert [w.center for w in spheres] == points
        assert all(sphere_within(s, w.center, w.quadrance) for w in spheres)

    @given(
        seed=st.integers(min_value=0, max_value=2**32 - 1),
        d=st.integers(min_value=3, max_value=5),
        data=st.data(),
    )
    def test_random_dependent_points(self, seed, d, data):
        span_dim = data.draw(st.integers(min_value=1, max_value=d - 2))
        rng = np.random.default_rng(seed)
        points = sampling.random_dependent_points(
            rng, d, span_dim, d + 1, coord_range=5, max_denominator=3
        )
        s = intersect_spheres(infinite_intersection_witness(points))
        assert s.kind is SphereKind.INFINITE
        assert s.dim == d - span_dim
