from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from spraylab import sampling
from spraylab.core.position import is_general_position_vectors
from spraylab.duality.centers import (
    CenterStream,
    HPoint,
    RadiiVector,
    directions_from_centers,
    extra_direction,
    ivan_coefficients,
    ivan_residual,
    normalize_direction,
    u_space,
)
from spraylab.duality.transfer import (
    basis_change,
    basis_change_inverse,
    dual_direction,
    dualize,
    hpoint_on_sphere,
    phi,
    phi_inverse,
    reflect,
    sphere_image_basis,
    sphere_image_extra,
)
from spraylab.exceptions import (
    CentersNotWellPlaced,
    DependentVectors,
    InputError,
    NotInE,
    NotInUSpace,
)

from . import strategies
from .strategies import v


class TestDualDirections:
    def test_u_space(self, plane_centers):
        assert u_space(plane_centers, v(1, 1)) == [v(1, -1, -1)]

    def test_normalized_direction(self, plane_centers):
        assert extra_direction(plane_centers, v(1, 1)) == v(-1, 1, 1)
        assert extra_direction(plane_centers, v(1, 1, 0)) == v(-1, 1, 1)

    def test_direction_at_a_basis_center(self, plane_centers):
        assert extra_direction(plane_centers, v(0, 0)) == v(1, 0, 0)

    def test_normalize_zero_sum(self):
        assert normalize_direction(v(2, -2, 0)) == v(1, -1, 0)

    def test_ivan_coefficients(self, plane_centers):
        dd = ivan_coefficients(plane_centers, v(1, 1), v(1, -1, -1))
        assert dd.b == 1
        assert dd.c == 0
        for x in (v(0, 0), v(3, -2), v("1/2", 7)):
            assert ivan_residual(plane_centers, dd, v(1, 1), x) == 0

    def test_ivan_rejects_vectors_outside_u_space(self, plane_centers):
        with pytest.raises(NotInUSpace):
            ivan_coefficients(plane_centers, v(1, 1), v(1, 0, 0))

    def test_directions_from_centers(self, plane_centers):
        dirs = directions_from_centers(plane_centers.with_extra([v(1, 1, 0)]))
        assert dirs == [v(1, 0, 0), v(0, 1, 0), v(0, 0, 1), v(-1, 1, 1)]

    def test_centers_not_well_placed(self, plane_centers):
        with pytest.raises(CentersNotWellPlaced):
            directions_from_centers(plane_centers.with_extra([v(2, 0, 0)]))

    def test_moment_curve_stream(self):
        cfg = CenterStream(4).config(13)
        dirs = directions_from_centers(cfg)
        assert len(dirs) == 13
        assert is_general_position_vectors(dirs, 4)

    def test_stream_directions_match_config(self):
        stream = CenterStream(3)
        cfg = stream.config(6)
        expected = directions_from_centers(cfg)
        assert [stream.direction(n) for n in range(1, 7)] == expected

    @given(
        seed=st.integers(min_value=0, max_value=2**32 - 1),
        d=st.integers(min_value=2, max_value=4),
    )
    def test_random_well_placed_centers_give_general_position(self, seed, d):
        rng = np.random.default_rng(seed)
        cfg = sampling.random_center_config(
            rng, d, n_extra=3, coord_range=6, max_denominator=2
        )
        assert is_general_position_vectors(directions_from_centers(cfg), d)


class TestPhi:
    def test_phi(self, plane_centers):
        assert phi(plane_centers, HPoint(v(0, 0), 1)).r == v(1, 2, 2)

    def test_phi_inverse(self, plane_centers):
        x = phi_inverse(plane_centers, RadiiVector(v(1, 2, 2)))
        assert x == HPoint(v(0, 0), 1)

    def test_not_in_e(self, plane_centers):
        with pytest.raises(NotInE) as e:
            phi_inverse(plane_centers, RadiiVector(v(1, 2, 100)))
        assert e.value.details["height_sq"] == -2400

    def test_boundary_needs_closure(self, plane_centers):
        boundary = HPoint(v(1, 1), 0)
        with pytest.raises(InputError):
            phi(plane_centers, boundary)
        r = phi(plane_centers, boundary, closure=True)
        assert phi_inverse(plane_centers, r, closure=True) == boundary

    def test_reflection_keeps_distances(self, plane_centers):
        x = HPoint(v(2, 3), 4)
        assert phi(plane_centers, reflect(x)) == phi(plane_centers, x)

    def test_negative_radii_rejected(self):
        with pytest.raises(InputError):
            RadiiVector(v(1, -1, 2))

    def test_from_point(self):
        x = HPoint.from_point(v(1, 2, -3))
        assert x == HPoint(v(1, 2), 9, lower=True)

    @given(
        seed=st.integers(min_value=0, max_value=2**32 - 1),
        d=st.integers(min_value=2, max_value=4),
    )
    def test_roundtrip(self, seed, d):
        rng = np.random.default_rng(seed)
        cfg = sampling.random_center_config(rng, d)
        x = sampling.random_hpoint(rng, d)
        assert phi_inverse(cfg, phi(cfg, x)) == x


class TestSphereImages:
    def test_basis_image(self, plane_centers):
        h = sphere_image_basis(plane_centers, 1, 1)
        assert h.contains(phi(plane_centers, HPoint(v(0, 0), 1)).r)

    def test_extra_image_matches_membership(self, plane_centers):
        cfg = plane_centers.with_extra([v(1, 1, 0)])
        dd = dual_direction(cfg, 0)
        h = sphere_image_extra(cfg, 0, dd, 3)
        # (1, 1) at height^2 3 is on the sphere of quadrance 3 around (1, 1, 0)
        x = HPoint(v(1, 1), 3)
        assert hpoint_on_sphere(x, v(1, 1, 0), 3)
        assert h.contains(phi(cfg, x).r)
        assert not h.contains(phi(cfg, HPoint(v(1, 1), 2)).r)

    def test_dualize(self, plane_centers):
        cfg = plane_centers.with_extra([v(1, 1, 0)])
        h, dd = dualize(cfg, 2, 5)
        assert dd is None
        assert h.normal == v(0, 1, 0) and h.offset == 5
        h, dd = dualize(cfg, 4, 3)
        assert dd.u == v(-1, 1, 1)
        assert dd.extra_index == 0

    def test_dualize_out_of_range(self, plane_centers):
        with pytest.raises(InputError):
            dualize(plane_centers, 4, 1)

    @given(x=strategies.vectors(3))
    def test_basis_change(self, x):
        us = [v(1, 2, 0), v(0, 1, 0), v(1, 1, 1)]
        m = basis_change(us)
        assert m.apply(x) == v(*(u.dot(x) for u in us))
        assert basis_change_inverse(us).apply(m.apply(x)) == x

    def test_basis_change_needs_a_basis(self):
        with pytest.raises(DependentVectors):
            basis_change([v(1, 2), v(2, 4)])

    def test_basis_change_example(self):
        m = basis_change([v(1, 2), v(0, 1)])
        assert m.to_strings() == [["1", "2"], ["0", "1"]]
        assert m.apply(v(2, -1)) == v(0, -1)

    def test_fractional_height(self, plane_centers):
        x = HPoint(v("1/3", "-2/5"), Fraction(7, 9))
        assert phi_inverse(plane_centers, phi(plane_centers, x)) == x
