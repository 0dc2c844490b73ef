import cmath
import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from nervewind.errors import DegenerateTriangleError
from nervewind.periods import PeriodTriangle
from nervewind.rotation import (
    arc_decomposition,
    critical_angle,
    dominant_side,
    projected_lengths,
)

TAU = math.tau

_sides = st.complex_numbers(
    min_magnitude=0.1, max_magnitude=10, allow_nan=False, allow_infinity=False
)


@st.composite
def nondegenerate_triangles(draw):
    a = draw(_sides)
    b = draw(_sides)
    c = -(a + b)
    assume(abs(c) > 0.05 and abs((b / a).imag) > 1e-3)
    return PeriodTriangle.from_sides(a, b, c)


nondegenerate = nondegenerate_triangles()


class TestCriticalAngle:
    def test_real_side(self):
        assert critical_angle(1.0) == pytest.approx(math.pi)

    def test_sign_irrelevant(self):
        assert critical_angle(-1.0) == pytest.approx(math.pi)

    def test_eighth_turn(self):
        assert critical_angle(cmath.exp(1j * math.pi / 4)) == pytest.approx(math.pi / 2)

    def test_zero_side(self):
        with pytest.raises(DegenerateTriangleError):
            critical_angle(0.0)

    @given(
        side=st.complex_numbers(min_magnitude=1e-3, max_magnitude=1e6, allow_nan=False, allow_infinity=False)
    )
    def test_projection_vanishes_and_is_unique(self, side):
        phi = critical_angle(side)
        assert 0.0 <= phi < TAU
        assert abs((cmath.exp(0.5j * phi) * side).real) < 1e-12 * abs(side)
        # only one critical angle per side: the projection at phi + pi has
        # full magnitude, so no second zero exists in [0, 2pi)
        assert abs((cmath.exp(0.5j * (phi + math.pi)) * side).real) > 0.5 * abs(side)


class TestEquilateral:
    def test_spec_angles(self, equilateral):
        angles, dec = arc_decomposition(equilateral)
        assert angles.phi_a == pytest.approx(math.pi)
        assert angles.phi_b == pytest.approx(5 * math.pi / 3)
        assert angles.phi_c == pytest.approx(math.pi / 3)
        i1 = dec.arcs[0]
        assert i1.start == pytest.approx(5 * math.pi / 3)
        assert i1.end == pytest.approx(math.pi / 3)
        assert i1.contains(0.0)  # runs through zero

    def test_dominance_at_zero(self, equilateral):
        index, margin = dominant_side(equilateral, 0.0)
        assert index == 1
        assert margin == pytest.approx(0.5)

    def test_tie_at_own_critical_angle(self, equilateral):
        angles, _ = arc_decomposition(equilateral)
        index, margin = dominant_side(equilateral, angles.phi_a)
        assert index in (2, 3)
        assert margin < 1e-12

    def test_a_projection_vanishes_at_phi_a(self, equilateral):
        angles, _ = arc_decomposition(equilateral)
        p = projected_lengths(equilateral, angles.phi_a)
        assert p[0] < 1e-12


class TestArcDecomposition:
    @given(tri=nondegenerate)
    @settings(max_examples=150, deadline=None)
    def test_arcs_tile_the_circle(self, tri):
        _, dec = arc_decomposition(tri)
        assert sum(arc.length for arc in dec.arcs) == pytest.approx(TAU)

    @given(tri=nondegenerate)
    @settings(max_examples=150, deadline=None)
    def test_projections_of_other_sides_tie_at_critical_angle(self, tri):
        angles, _ = arc_decomposition(tri)
        scale = max(abs(s) for s in tri.sides)
        for phi, j in zip(angles.as_tuple(), (0, 1, 2)):
            p = projected_lengths(tri, phi)
            others = [p[k] for k in range(3) if k != j]
            assert abs(others[0] - others[1]) < 1e-12 * scale

    @given(tri=nondegenerate)
    @settings(max_examples=100, deadline=None)
    def test_sign_change_across_critical_angle(self, tri):
        angles, _ = arc_decomposition(tri)
        rot = lambda phi, s: (cmath.exp(0.5j * phi) * s).real

        def gap(phi):
            return abs(rot(phi, tri.b)) - abs(rot(phi, tri.c))

        before = gap(angles.phi_a - 1e-3)
        after = gap(angles.phi_a + 1e-3)
        assert before * after < 0.0

    @given(tri=nondegenerate)
    @settings(max_examples=60, deadline=None)
    def test_dominant_side_agrees_with_arc(self, tri):
        _, dec = arc_decomposition(tri)
        for phi in np.linspace(0.0, TAU, 400, endpoint=False):
            arc = dec.locate(phi)
            if arc.clearance(phi) < 1e-6:
                continue
            index, _ = dominant_side(tri, phi)
            assert index == arc.side_index

    @given(
        tri=nondegenerate,
        lam=st.complex_numbers(min_magnitude=0.1, max_magnitude=10, allow_nan=False, allow_infinity=False),
    )
    @settings(max_examples=100, deadline=None)
    def test_scale_rotation_covariance(self, tri, lam):
        scaled = PeriodTriangle.from_sides(lam * tri.a, lam * tri.b, lam * tri.c)
        a1, _ = arc_decomposition(tri)
        a2, _ = arc_decomposition(scaled)
        shift = -2.0 * cmath.phase(lam)
        for u, v in zip(a1.as_tuple(), a2.as_tuple()):
            d = math.remainder(v - (u + shift), TAU)
            assert abs(d) < 1e-9
        # margins scale by |lam|
        _, m1 = dominant_side(tri, 1.0)
        _, m2 = dominant_side(scaled, 1.0 + shift)
        assert m2 == pytest.approx(abs(lam) * m1, rel=1e-9)

    def test_degenerate_triangle_rejected(self):
        with pytest.raises(DegenerateTriangleError):
            PeriodTriangle.from_sides(1.0, -0.5)  # collinear

    def test_dense_grid_consistency(self, standard_triangle):
        _, dec = arc_decomposition(standard_triangle)
        phis = np.linspace(0.0, TAU, 10_000, endpoint=False)
        for phi in phis:
            arc = dec.locate(phi)
            if arc.clearance(phi) < 1e-6:
                continue
            index, _ = dominant_side(standard_triangle, float(phi))
            assert index == arc.side_index
