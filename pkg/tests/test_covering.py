from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from spraylab import sampling
from spraylab.core.affine import Hyperplane
from spraylab.core.vectors import QMatrix
from spraylab.covering.assignment import PointAssignment
from spraylab.covering.drizzle import (
    drizzle_cover_space,
    greedy_drizzle_assign,
    pullback_drizzle_cover,
)
from spraylab.covering.escape import (
    Exhausted,
    GridDomain,
    Witness,
    adversarial_cover,
    escape_search,
)
from spraylab.covering.streams import DirectionStream
from spraylab.covering.verify import (
    glue_parts,
    project_assignment,
    verify_hyperplane_cover,
    verify_spray_cover,
)
from spraylab.covering.zsets import (
    build_escape_set,
    difference_avoiding_set,
    escape_direction,
    is_difference_avoiding,
    z_set_base,
    z_set_inductive,
    z_set_line,
    z_set_mapped,
)
from spraylab.duality.centers import (
    CenterStream,
    HPoint,
    directions_from_centers,
    extra_direction,
)
from spraylab.duality.transfer import phi
from spraylab.exceptions import (
    DependentVectors,
    DisjointnessPreconditionFailed,
    DuplicatePoint,
    InputError,
    NotInE,
)

from . import strategies
from .strategies import v

SQUARE = [v(0, 0), v(1, 0), v(0, 1), v(1, 1)]
CUBE_FACTORS = [[0, 1]] * 3
LATTICE_DIRS = [v(1, 0, 0), v(0, 1, 0), v(0, 0, 1), v(1, 1, 1)]


@pytest.fixture
def base_zset():
    return z_set_base(3, v(1, 1, 0), [0, "1/3"], CUBE_FACTORS)


class TestAssignment:
    def test_from_parts(self):
        a = PointAssignment.from_parts([[v(0, 0)], [], [v(1, 0), v(2, 0)]])
        assert a.part_of == (1, 3, 3)
        assert a.n_parts == 3
        assert a.indices_by_part() == {1: [0], 2: [], 3: [1, 2]}
        assert a.part(3) == [v(1, 0), v(2, 0)]

    def test_merged(self):
        a = PointAssignment((v(0, 0),), (1,))
        b = PointAssignment((v(1, 0),), (2,), 4)
        merged = a.merged(b)
        assert merged.n_parts == 4
        assert merged.covered() == frozenset({v(0, 0), v(1, 0)})

    @pytest.mark.parametrize(
        "labels, n_parts",
        [((0,), None), ((3,), 2), ((1, 2), None)],
    )
    def test_invalid_labels(self, labels, n_parts):
        with pytest.raises(InputError):
            PointAssignment((v(0, 0),), labels, n_parts)


class TestDirectionStreams:
    def test_moment_curve(self):
        dirs = DirectionStream.moment_curve(3)
        assert dirs[1] == v(1, 0, 0)
        assert dirs[3] == v(1, 2, 4)
        dirs.validate_prefix(8)

    def test_from_list(self):
        with pytest.raises(DependentVectors) as e:
            DirectionStream.from_list([v(1, 0), v(0, 1), v(2, 0)])
        assert e.value.details["violation"] == (0, 2)

    def test_list_length(self):
        dirs = DirectionStream.from_list([v(1, 0), v(0, 1)])
        assert dirs.prefix(2) == [v(1, 0), v(0, 1)]
        with pytest.raises(InputError):
            dirs[3]
        with pytest.raises(InputError):
            dirs[0]

    def test_from_centers(self):
        centers = CenterStream(3)
        dirs = DirectionStream.from_centers(centers)
        assert dirs[2] == v(0, 1, 0)
        assert dirs[4] == extra_direction(centers.basis, centers.center(4))


class TestGreedyDrizzle:
    def test_square(self):
        dirs = DirectionStream.moment_curve(2)
        a = greedy_drizzle_assign(SQUARE, dirs, 2)
        assert a.part_of == (1, 1, 2, 2)
        assert verify_hyperplane_cover(a, dirs).is_drizzle

    @pytest.mark.parametrize(
        "parity, expected",
        [("even", (2, 2, 4, 2)), ("odd", (1, 1, 3, 3))],
    )
    def test_parity(self, parity, expected):
        dirs = DirectionStream.moment_curve(2)
        a = greedy_drizzle_assign(SQUARE, dirs, 2, parity=parity)
        assert a.part_of == expected

    def test_duplicate_points(self):
        with pytest.raises(DuplicatePoint):
            greedy_drizzle_assign(
                [v(0, 0), v(1, 1), v(0, 0)], DirectionStream.moment_curve(2), 2
            )

    def test_unknown_parity(self):
        with pytest.raises(InputError):
            greedy_drizzle_assign(
                SQUARE, DirectionStream.moment_curve(2), 2, parity="prime"
            )

    @given(points=strategies.distinct_points(3, max_size=10))
    def test_always_a_drizzle_within_the_blocking_bound(self, points):
        dirs = DirectionStream.moment_curve(3)
        a = greedy_drizzle_assign(points, dirs, 3, progress=False)
        assert verify_hyperplane_cover(a, dirs).is_drizzle
        assert a.n_parts <= 2 * (len(points) - 1) + 1

    def test_square_with_directions_dual_to_centers(self):
        dirs = DirectionStream.from_centers(CenterStream(2))
        a = greedy_drizzle_assign(SQUARE, dirs, 2)
        assert a.part_of == (1, 1, 2, 3)
        assert dirs[3] == v(-1, 2)

    @given(seed=st.integers(min_value=0, max_value=2**32 - 1))
    def test_same_seed_same_assignment(self, seed):
        def cover():
            points = sampling.random_distinct_points(sampling.make_rng(seed), 30, 3)
            dirs = DirectionStream.from_centers(CenterStream(3))
            return greedy_drizzle_assign(points, dirs, 3)

        first, second = cover(), cover()
        assert first.points == second.points
        assert first.part_of == second.part_of


class TestPullback:
    def test_pullback_is_a_sphere_drizzle(self):
        cfg = CenterStream(3).config(8)
        dirs = DirectionStream.from_list(directions_from_centers(cfg))
        xs = [HPoint(v(0, 0), 1), HPoint(v(1, 1), 1), HPoint(v(2, -1), 3)]
        radii = [phi(cfg, x).r for x in xs]
        cover = pullback_drizzle_cover(cfg, greedy_drizzle_assign(radii, dirs, 3), dirs)
        assert cover.report.kind == "sphere"
        assert cover.report.is_drizzle
        for x, k in cover.assignment:
            assert x.lower == (k % 2 == 1)

    def test_points_outside_e(self, plane_centers):
        with pytest.raises(NotInE):
            pullback_drizzle_cover(
                plane_centers, PointAssignment((v(1, 2, 100),), (1,))
            )

    def test_too_few_centers(self, plane_centers):
        with pytest.raises(InputError):
            pullback_drizzle_cover(plane_centers, PointAssignment((v(1, 2, 2),), (4,)))

    @given(points=strategies.distinct_points(3, max_size=8))
    def test_space_cover(self, points):
        cover = drizzle_cover_space(points, CenterStream(3), progress=False)
        assert cover.report.is_drizzle
        assert len(cover.centers) == cover.assignment.n_parts
        for x, k in cover.assignment:
            assert (x[2] < 0) == (k % 2 == 1)


class TestDifferenceAvoiding:
    def test_zero_one(self):
        s = difference_avoiding_set([0, 1], 1, 3)
        assert s == [Fraction(-1, 73), Fraction(0), Fraction(1, 73)]

    def test_on_a_grid(self):
        assert difference_avoiding_set([0, 1], 3, 3, step=1) == [-2, 0, 2]

    def test_grid_too_coarse(self):
        with pytest.raises(InputError):
            difference_avoiding_set([0, 1], 2, 3, step=1)

    @given(
        xs=st.lists(strategies.rationals, max_size=5, unique=True),
        epsilon=strategies.positive_rationals,
        m=st.integers(min_value=1, max_value=4),
    )
    def test_defining_property(self, xs, epsilon, m):
        s = difference_avoiding_set(xs, epsilon, m)
        assert len(s) == m
        assert all(abs(x) < epsilon for x in s)
        assert is_difference_avoiding(s, xs)

    def test_repeated_elements_are_not_avoiding(self):
        assert not is_difference_avoiding([Fraction(0), Fraction(0)], [])


class TestZSets:
    def test_base(self, base_zset):
        assert len(base_zset) == 16
        assert base_zset.kind == "base"
        assert base_zset.points[0] == v(0, 0, 0)

    def test_base_violation(self):
        with pytest.raises(DisjointnessPreconditionFailed) as e:
            z_set_base(3, v(1, 1, 0), [0, 1], CUBE_FACTORS)
        assert e.value.details["clash"] == [-1, 1]

    @pytest.mark.parametrize("bad", [v(0, 1, 0), v(1, 0, 0), v(1, 1, 1)])
    def test_base_direction_shape(self, bad):
        with pytest.raises(InputError):
            z_set_base(3, bad, [0], CUBE_FACTORS)

    def test_inductive(self, base_zset):
        z = z_set_inductive(base_zset, v(0, 0, 1), [0, 2, 4])
        assert len(z) == 48
        assert z.depth() == 2

    def test_inductive_violation(self, base_zset):
        with pytest.raises(DisjointnessPreconditionFailed) as e:
            z_set_inductive(base_zset, v(1, 1, 0), [0, 1])
        assert e.value.details["shift"] == v(-1, -1, 0)

    def test_line(self):
        z = z_set_line(v(1, 2, 3), [0, 1, 2])
        assert z.kind == "line"
        assert z.points[2] == v(2, 4, 6)

    def test_mapped(self, base_zset):
        swap = QMatrix.from_rows([[0, 1, 0], [1, 0, 0], [0, 0, 1]])
        z = z_set_mapped(base_zset, swap)
        assert len(z) == len(base_zset)
        assert z.depth() == 2
        with pytest.raises(DependentVectors):
            z_set_mapped(
                base_zset, QMatrix.from_rows([[1, 0, 0], [1, 0, 0], [0, 0, 1]])
            )

    def test_escape_direction(self):
        j, w = escape_direction(LATTICE_DIRS)
        assert j == 0
        assert w[0] == 0
        assert w.dot(v(1, 1, 1)) == 0
        assert sum(1 for x in w if x != 0) >= 2

    def test_lattice_escape_set(self):
        z = build_escape_set(LATTICE_DIRS, 8, (3, 3, 3), 2, step=1)
        assert (len(z), z.kind, z.depth()) == (54, "mapped", 2)
        assert all(x.denominator == 1 for p in z for x in p)

    def test_directions_that_do_not_span(self):
        z = build_escape_set([v(1, 0, 0), v(0, 1, 0)], 1, (1, 1, 1), 2)
        assert z.kind == "line"
        assert len(z) == 2
        assert all(p.dot(v(1, 0, 0)) == 0 and p.dot(v(0, 1, 0)) == 0 for p in z)

    def test_layered_escape_set(self):
        dirs = DirectionStream.moment_curve(3).prefix(6)
        z = build_escape_set(dirs, 1, (2, 2, 2), 2)
        assert len(z) == 16 * 2
        assert z.kind == "inductive"


class TestEscape:
    domain = GridDomain.cube(3, 5, step="1/3")

    def test_grid(self):
        assert self.domain.size == 125
        assert self.domain.contains(v("1/3", 0, "4/3"))
        assert not self.domain.contains(v("1/2", 0, 0))
        assert not self.domain.contains(v("5/3", 0, 0))

    def test_all_covered(self, base_zset):
        grid = list(self.domain.points())
        everything = PointAssignment(tuple(grid), (1,) * len(grid), 1)
        result = escape_search(
            everything,
            LATTICE_DIRS[:1],
            base_zset,
            [v(0, 0, 0)],
            self.domain,
            max_workers=1,
        )
        assert result == Exhausted(n_translates=1, n_checked=16, max_multiplicity=25)

    def test_empty_cover(self, base_zset):
        result = escape_search(
            PointAssignment.empty(),
            LATTICE_DIRS[:1],
            base_zset,
            [v(0, 0, 0)],
            self.domain,
        )
        assert isinstance(result, Witness)
        assert result.point == v(0, 0, 0)
        assert result.translate_index == 0
        assert result.z_index == 0
        assert result.max_multiplicity == 0

    def test_adversarial_cover_leaves_a_gap(self, base_zset):
        cover = adversarial_cover(self.domain, LATTICE_DIRS[:1], 1)
        assert len(cover) == 5
        result = escape_search(
            cover,
            LATTICE_DIRS[:1],
            base_zset,
            [v(0, 0, 0), v("1/3", 0, 0)],
            self.domain,
        )
        assert isinstance(result, Witness)
        assert result.point not in cover.covered()
        assert result.max_multiplicity == 1

    def test_adversarial_cover_within_cap(self):
        cover = adversarial_cover(self.domain, LATTICE_DIRS, 5)
        assert verify_hyperplane_cover(cover, LATTICE_DIRS).is_within(5)


class TestVerify:
    def test_violating_hyperplane_cover(self):
        cover = PointAssignment((v(0, 0), v(0, 1)), (1, 1))
        report = verify_hyperplane_cover(cover, [v(1, 0)])
        assert not report.is_drizzle
        part = report.part(1)
        assert part.max_multiplicity == 2
        assert part.histogram == {2: 1}
        assert part.worst_points == (0, 1)
        assert part.worst_value == 0

    def test_symmetric_points_share_a_sphere(self):
        cover = PointAssignment((v(1, 0), v(-1, 0)), (1, 1))
        report = verify_spray_cover([v(0, 0)], cover)
        assert report.max_multiplicity == 2

    def test_missing_direction(self):
        with pytest.raises(InputError):
            verify_hyperplane_cover(PointAssignment((v(0, 0),), (2,)), [v(1, 0)])

    def test_project_and_glue(self):
        projected, centers = project_assignment(
            PointAssignment((v(1, 1), v(2, -1)), (1, 2)),
            [v(0, 1), v(0, -1)],
            Hyperplane(v(0, 1), 0),
            glue=True,
        )
        assert projected.part_of == (1, 1)
        assert projected.points == (v(1, 0), v(2, 0))
        assert centers == [v(0, 0)]

    def test_restrict(self):
        projected, centers = project_assignment(
            PointAssignment((v(1, 0), v(2, -1)), (1, 2)),
            [v(0, 1), v(0, -1)],
            Hyperplane(v(0, 1), 0),
            mode="restrict",
        )
        assert projected.points == (v(1, 0),)
        assert projected.n_parts == 2
        assert centers == [v(0, 0), v(0, 0)]

    def test_unknown_mode(self):
        with pytest.raises(InputError):
            project_assignment(
                PointAssignment.empty(), [], Hyperplane(v(0, 1), 0), mode="sideways"
            )

    def test_glue_keeps_first_appearance_order(self):
        assignment = PointAssignment((v(0, 0), v(1, 0), v(2, 0)), (1, 2, 3))
        glued, centers = glue_parts(assignment, [v(5, 5), v(1, 1), v(5, 5)])
        assert glued.part_of == (1, 2, 1)
        assert centers == [v(5, 5), v(1, 1)]
