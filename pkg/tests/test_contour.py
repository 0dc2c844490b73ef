import cmath
import math

import pytest

from nervewind.contour import (
    BranchState,
    CircleArc,
    LineSegment,
    ParamPath,
    composite_integral,
    integrate_branch_tracked,
    make_puncture_loop,
)
from nervewind.errors import GeometryError

from oracles import complete_K, mp_branch_tracked

T = 2.0 + 0.5j
TAU = math.tau


def circle_path(center, radius):
    cuts = [k * TAU / 4 for k in range(5)]
    return ParamPath(
        tuple(CircleArc(center, radius, a, b) for a, b in zip(cuts, cuts[1:]))
    )


class TestMakePunctureLoop:
    def test_keyhole_encloses_only_its_puncture(self):
        loop = make_puncture_loop(0, T, -2.0 + 0.0j, 0.1)
        assert loop.winding_number_about(0.0) == 1
        assert loop.winding_number_about(1.0) == 0
        assert loop.winding_number_about(T) == 0
        assert loop.is_closed()

    def test_corridor_detours_around_blocking_puncture(self):
        # straight corridor from -2 to puncture 1 would pass through 0
        loop = make_puncture_loop(1, T, -2.0 + 0.0j, 0.3)
        assert loop.winding_number_about(0.0) == 0
        assert loop.winding_number_about(1.0) == 1
        assert loop.winding_number_about(T) == 0

    def test_radius_too_large_raises(self):
        with pytest.raises(GeometryError):
            make_puncture_loop(0, 2.0 + 0.0j, -2.0 + 0.0j, 10.0)

    def test_loop_around_t(self):
        loop = make_puncture_loop("t", T, -2.0 - 2.0j, 0.2)
        assert loop.winding_number_about(T) == 1
        assert loop.winding_number_about(0.0) == 0


class TestBranchTracking:
    def test_empty_circle_integrates_to_zero_and_keeps_branch(self):
        path = circle_path(5.0 + 5.0j, 0.5)
        value, final = integrate_branch_tracked(path, T, tol=1e-10)
        assert abs(value) < 1e-10
        assert final.sign == 1

    def test_one_puncture_flips_branch(self):
        path = circle_path(0.0j, 0.4)
        _, final = integrate_branch_tracked(path, T)
        assert final.sign == -1

    def test_two_punctures_keep_branch(self):
        path = circle_path(0.5 + 0.0j, 0.8)
        _, final = integrate_branch_tracked(path, T)
        assert final.sign == 1

    def test_two_puncture_loop_matches_high_precision_oracle(self):
        path = circle_path(0.5 + 0.0j, 0.8)
        value, _ = integrate_branch_tracked(path, T, tol=1e-12)
        oracle = mp_branch_tracked(path, T)
        assert abs(value - oracle) < 1e-11

    def test_two_puncture_loop_matches_agm_cycle_for_real_t(self):
        # the loop around {0, 1} is a lattice cycle: |value| = 2 K(1/2) at t=4
        path = circle_path(0.5 + 0.0j, 0.8)
        value, final = integrate_branch_tracked(path, 4.0, tol=1e-12)
        assert final.sign == 1
        assert abs(abs(value) - 2.0 * complete_K(0.5)) < 1e-10

    def test_reversal_negates_integral(self):
        path = circle_path(0.5 + 0.0j, 0.8)
        value, _ = integrate_branch_tracked(path, T, tol=1e-12)
        back, _ = integrate_branch_tracked(path.reversed(), T, tol=1e-12)
        assert abs(value + back) < 1e-14 * abs(value)

    def test_flipping_initial_branch_negates_integral(self):
        path = circle_path(0.5 + 0.0j, 0.8)
        plus, _ = integrate_branch_tracked(path, T, BranchState(1), tol=1e-12)
        minus, _ = integrate_branch_tracked(path, T, BranchState(-1), tol=1e-12)
        assert abs(plus + minus) < 1e-13 * abs(plus)

    def test_homotopic_loops_agree(self):
        tol = 1e-10
        a, _ = integrate_branch_tracked(circle_path(0.5 + 0.0j, 0.8), T, tol=tol)
        b, _ = integrate_branch_tracked(circle_path(0.4 + 0.1j, 0.95), T, tol=tol)
        assert abs(a - b) < 2.0 * tol

    def test_separation_floor_enforced(self):
        path = ParamPath((LineSegment(-1.0 + 0.0j, 1.0 + 0.0j),))  # through 0
        with pytest.raises(GeometryError):
            integrate_branch_tracked(path, T)


class TestConvergence:
    def test_halving_panels_gains_at_least_the_rule_order(self):
        # analytic segment at distance 0.2 from the branch point 0; the
        # 1-panel error is far above roundoff, so the order is observable
        path = ParamPath((LineSegment(-0.5 + 0.2j, 0.5 + 0.2j),))
        ref, _ = composite_integral(path, T, 256)
        e1 = abs(composite_integral(path, T, 1)[0] - ref)
        e2 = abs(composite_integral(path, T, 2)[0] - ref)
        assert e1 > 1e-10
        assert e1 / e2 >= 2.0**15

    def test_adaptive_result_matches_composite(self):
        path = circle_path(0.5 + 0.0j, 0.8)
        adaptive, _ = integrate_branch_tracked(path, T, tol=1e-12)
        fixed, _ = composite_integral(path, T, 64)
        assert abs(adaptive - fixed) < 1e-11


class TestPathGeometry:
    def test_segments_must_chain(self):
        with pytest.raises(GeometryError):
            ParamPath(
                (LineSegment(0.0j, 1.0 + 0.0j), LineSegment(2.0 + 0.0j, 3.0 + 0.0j))
            )

    def test_arc_distance(self):
        arc = CircleArc(0.0j, 1.0, 0.0, math.pi / 2)
        assert arc.min_distance_to(0.0j) == pytest.approx(1.0)
        assert arc.min_distance_to(2.0 + 0.0j) == pytest.approx(1.0)
        # point on the far side: nearest approach is the endpoint at i
        assert arc.min_distance_to(-2.0 + 0.0j) == pytest.approx(abs(-2.0 - 1.0j))

    def test_winding_probe(self):
        path = circle_path(0.0j, 1.0)
        assert path.winding_number_about(0.0j) == 1
        assert path.winding_number_about(3.0 + 0.0j) == 0
        assert path.reversed().winding_number_about(0.0j) == -1
