import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nervewind.errors import (
    AmbiguousPointError,
    InvalidNervePointError,
    NotNearInfinityError,
    UndersampledError,
)
from nervewind.nerve import (
    EDGE_FOR_ARC,
    NERVE,
    NervePoint,
    nerve_angle,
    partition_of_unity,
    winding_from_angles,
)
from nervewind.traces import ProjectivePoint

TAU = math.tau


def projective(l1, l2, l3):
    """Projective point with affine coordinate 0 and given raw logmags."""
    top = max(0.0, l1, l2, l3)
    return ProjectivePoint((0.0 - top, l1 - top, l2 - top, l3 - top), (0.0,) * 4)


class TestPartitionOfUnity:
    def test_single_dominant_maps_to_edge_midpoint(self):
        assert partition_of_unity(projective(100.0, 0.0, 0.0)).bary == (0.0, 0.5, 0.5)

    def test_two_dominant_maps_to_opposite_vertex(self):
        assert partition_of_unity(projective(0.0, 100.0, 100.0)).bary == (1.0, 0.0, 0.0)

    def test_staircase_maps_to_smallest_coordinate_vertex(self):
        # s = (-3L, 0, 3L) for logmags (2L, L, 0)
        assert partition_of_unity(projective(100.0, 50.0, 0.0)).bary == (0.0, 0.0, 1.0)

    def test_not_near_infinity(self):
        with pytest.raises(NotNearInfinityError):
            partition_of_unity(projective(2.0, 1.0, 0.0))

    def test_ambiguous_point(self):
        with pytest.raises(AmbiguousPointError):
            partition_of_unity(projective(50.0, 50.0, 50.0))

    def test_zero_coordinates_land_on_edge_point(self):
        # X2 = X3 = 0 exactly: the point [0:X1:0:0] is the intersection of
        # the v2 and v3 components, the midpoint of edge [v2 v3]
        p = ProjectivePoint((-100.0, 0.0, -math.inf, -math.inf), (0.0,) * 4)
        assert partition_of_unity(p).bary == (0.0, 0.5, 0.5)

    @given(
        l1=st.floats(min_value=-200, max_value=200),
        l2=st.floats(min_value=-200, max_value=200),
        l3=st.floats(min_value=-200, max_value=200),
    )
    @settings(max_examples=300)
    def test_output_lies_on_nerve_body(self, l1, l2, l3):
        if max(l1, l2, l3) - min(l1, l2, l3) < 1e-6:
            return
        point = projective(l1 + 50.0, l2 + 50.0, l3 + 50.0)
        try:
            bary = partition_of_unity(point).bary
        except (NotNearInfinityError, AmbiguousPointError):
            return
        assert sum(bary) == pytest.approx(1.0, abs=1e-12)
        assert min(bary) == 0.0
        assert all(b >= 0.0 for b in bary)

    @given(
        gap=st.floats(min_value=0.1, max_value=100),
        lead=st.floats(min_value=20, max_value=200),
    )
    @settings(max_examples=200)
    def test_dominance_forces_zero_coordinate(self, gap, lead):
        # l1 exceeds both others by 2*gap: bary1 must vanish
        bary = partition_of_unity(projective(lead, lead - 2 * gap, lead - 3 * gap)).bary
        assert bary[0] == 0.0

    def test_near_tied_pair_approaches_opposite_vertex(self):
        bary = partition_of_unity(projective(0.0, 80.0, 80.0 + 1e-6)).bary
        assert bary[0] > 1.0 - 1e-6


class TestNerveAngle:
    def test_vertices(self):
        assert nerve_angle(NervePoint((1.0, 0.0, 0.0))) == 0.0
        assert nerve_angle(NervePoint((0.0, 1.0, 0.0))) == pytest.approx(TAU / 3)
        assert nerve_angle(NervePoint((0.0, 0.0, 1.0))) == pytest.approx(2 * TAU / 3)

    def test_edge_midpoint(self):
        assert nerve_angle(NervePoint((0.5, 0.5, 0.0))) == pytest.approx(math.pi / 3)

    def test_linear_interpolation_on_edge(self):
        assert nerve_angle(NervePoint((0.0, 0.25, 0.75))) == pytest.approx(7 * math.pi / 6)

    def test_interior_point_rejected(self):
        with pytest.raises(InvalidNervePointError):
            nerve_angle(NervePoint((0.4, 0.3, 0.3)))

    def test_nerve_combinatorics(self):
        assert NERVE.vertices == ("v1", "v2", "v3")
        assert NERVE.edge_points == ("[0:0:0:1]", "[0:1:0:0]", "[0:0:1:0]")
        assert EDGE_FOR_ARC == {1: "v2v3", 2: "v3v1", 3: "v1v2"}


class TestWinding:
    def test_uniform_positive_loop(self):
        angles = [k * TAU / 360 for k in range(361)]
        assert winding_from_angles(angles) == 1

    def test_constant_sequence(self):
        assert winding_from_angles([1.0] * 50) == 0

    def test_reversed_loop(self):
        angles = [TAU - k * TAU / 360 for k in range(361)]
        assert winding_from_angles(angles) == -1

    def test_multiple_turns(self):
        angles = [k * TAU / 100 for k in range(301)]
        assert winding_from_angles(angles) == 3

    def test_big_step_raises(self):
        with pytest.raises(UndersampledError):
            winding_from_angles([0.0, 2.0, 4.0])

    def test_wraparound_steps_are_fine(self):
        angles = [TAU - 0.1, TAU - 0.05, 0.05, 0.1]  # crosses 0
        assert winding_from_angles(angles, closed=False) == 0

    @given(n=st.integers(min_value=13, max_value=720), turns=st.integers(min_value=-3, max_value=3))
    def test_refinement_invariance(self, n, turns):
        if turns == 0:
            return
        steps = abs(turns) * n
        angles = [math.copysign(1, turns) * k * TAU / n for k in range(steps + 1)]
        assert winding_from_angles(angles) == turns
        doubled = [math.copysign(1, turns) * k * TAU / (2 * n) for k in range(2 * steps + 1)]
        assert winding_from_angles(doubled) == turns
