"""Tests for the half-plane/disc geometry and its two normalizations."""

import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from biholo.hyperbolic import (
    MetricMode,
    cayley_disc_to_halfplane,
    cayley_halfplane_to_disc,
    disc_distance,
    halfplane_distance,
    halfplane_distance_acosh,
    halfplane_metric_circle,
    vertical_line_distance,
)

halfplane_points = st.builds(
    complex,
    st.floats(min_value=-5.0, max_value=5.0),
    st.floats(min_value=0.05, max_value=5.0),
)
disc_points = st.complex_numbers(max_magnitude=0.95, allow_infinity=False, allow_nan=False)


class TestHalfplaneDistance:
    """Tests for the log-ratio closed form."""

    def test_coincident_points(self):
        assert halfplane_distance(1j, 1j) == 0.0

    def test_vertical_pair(self):
        """d(i, 2i) = log 2."""
        assert halfplane_distance(1j, 2j) == pytest.approx(0.6931471805599453, abs=1e-15)

    def test_diagonal_pair(self):
        """d(i, 1+i) = log((sqrt5 + 1)/(sqrt5 - 1))."""
        expected = math.log((math.sqrt(5) + 1) / (math.sqrt(5) - 1))
        assert halfplane_distance(1j, 1 + 1j) == pytest.approx(expected, abs=1e-15)
        assert expected == pytest.approx(0.9624236501192069, abs=1e-15)

    def test_rejects_lower_halfplane(self):
        with pytest.raises(ValueError):
            halfplane_distance(1j, 1 - 1j)
        with pytest.raises(ValueError):
            halfplane_distance(complex(2.0, 0.0), 1j)

    @given(z=halfplane_points, w=halfplane_points)
    @settings(max_examples=300)
    def test_agrees_with_acosh_oracle(self, z, w):
        """The log-ratio form equals arccosh(1 + |z-w|^2/(2 Im z Im w))."""
        assert abs(halfplane_distance(z, w) - halfplane_distance_acosh(z, w)) <= 1e-12

    @given(z=halfplane_points, w=halfplane_points)
    @settings(max_examples=300)
    def test_mode_factor_is_exactly_two(self, z, w):
        assert halfplane_distance(z, w) == 2.0 * halfplane_distance(z, w, MetricMode.KOBAYASHI)

    @given(z=halfplane_points, w=halfplane_points, u=halfplane_points)
    @settings(max_examples=300)
    def test_triangle_inequality(self, z, w, u):
        slack = halfplane_distance(z, w) + halfplane_distance(w, u) - halfplane_distance(z, u)
        assert slack >= -1e-10

    def test_nearly_ideal_pair_is_stable(self):
        """The guarded path stays finite and accurate near the boundary."""
        z = complex(0.0, 1e-9)
        w = complex(50.0, 1e-9)
        d = halfplane_distance(z, w)
        assert math.isfinite(d)
        assert d == pytest.approx(halfplane_distance_acosh(z, w), abs=1e-12)

    def test_mobius_invariance(self):
        """Real fractional linear maps with det 1 preserve distances."""
        rng = np.random.default_rng(42)
        for _ in range(200):
            z = complex(rng.uniform(-3, 3), rng.uniform(0.1, 3))
            w = complex(rng.uniform(-3, 3), rng.uniform(0.1, 3))
            a = rng.uniform(0.5, 2.0)
            b, c = rng.uniform(-2, 2), rng.uniform(-2, 2)
            d = (1.0 + b * c) / a
            mz = (a * z + b) / (c * z + d)
            mw = (a * w + b) / (c * w + d)
            assert halfplane_distance(z, w) == pytest.approx(
                halfplane_distance(mz, mw), abs=1e-10
            )


class TestDiscDistance:
    """Tests for the disc form of the metric."""

    def test_origin_zero(self):
        assert disc_distance(0j, 0j) == 0.0

    def test_tanh_radius(self):
        """d(0, tanh 1) = 1 in the Kobayashi normalization."""
        assert disc_distance(0.0, math.tanh(1.0), MetricMode.KOBAYASHI) == pytest.approx(
            1.0, abs=1e-12
        )

    def test_symmetric_pair(self):
        """d(0.3, -0.3) = artanh(0.6/1.09)."""
        assert disc_distance(0.3, -0.3, MetricMode.KOBAYASHI) == pytest.approx(
            0.6190392084062233, abs=1e-15
        )

    def test_rejects_outside(self):
        with pytest.raises(ValueError):
            disc_distance(1.2, 0.0)

    @given(a=disc_points, b=disc_points)
    @settings(max_examples=300)
    def test_mobius_invariance_under_automorphisms(self, a, b):
        """Distances survive the disc automorphism moving a to 0."""
        target = (a - b) / (1 - a.conjugate() * b)
        assert disc_distance(a, b) == pytest.approx(disc_distance(0j, target), abs=1e-10)

    @given(a=disc_points, b=disc_points)
    @settings(max_examples=300)
    def test_mode_factor_is_exactly_two(self, a, b):
        assert disc_distance(a, b) == 2.0 * disc_distance(a, b, MetricMode.KOBAYASHI)


class TestCayley:
    """Tests for the disc <-> half-plane equivalence."""

    def test_origin_goes_to_i(self):
        assert cayley_disc_to_halfplane(0j) == 1j

    def test_round_trip(self):
        z = 0.5 + 0.1j
        assert abs(cayley_halfplane_to_disc(cayley_disc_to_halfplane(z)) - z) <= 1e-12

    @given(a=disc_points, b=disc_points)
    @settings(max_examples=300)
    def test_isometry_within_a_mode(self, a, b):
        dh = halfplane_distance(cayley_disc_to_halfplane(a), cayley_disc_to_halfplane(b))
        assert dh == pytest.approx(disc_distance(a, b), abs=1e-11)

    def test_specific_isometry_value(self):
        assert halfplane_distance(
            cayley_disc_to_halfplane(0j), cayley_disc_to_halfplane(0.5 + 0j)
        ) == pytest.approx(disc_distance(0j, 0.5 + 0j), abs=1e-12)


class TestVerticalLineDistance:
    """Tests for the distance to a vertical geodesic."""

    def test_known_value_at_unit_ratio(self):
        """d(i pi, {Re = pi}) = log(1 + sqrt 2)."""
        assert vertical_line_distance(math.pi * 1j, math.pi) == pytest.approx(
            0.8813735870195429, abs=1e-12
        )

    def test_point_on_line(self):
        assert vertical_line_distance(1j, 0.0) == 0.0

    def test_matches_asinh_form(self):
        """The foot construction reduces to asinh(|Re z - c| / Im z)."""
        rng = np.random.default_rng(7)
        for _ in range(100):
            z = complex(rng.uniform(-4, 4), rng.uniform(0.1, 4))
            c = rng.uniform(-4, 4)
            assert vertical_line_distance(z, c) == pytest.approx(
                math.asinh(abs(z.real - c) / z.imag), abs=1e-12
            )

    def test_grid_minimization_oracle(self):
        """d(2i, {Re = 2}) = log(1 + sqrt 2), against 1e6 sampled line points."""
        z, c = 2j, 2.0
        ts = np.geomspace(1e-4, 100.0, 1_000_000)
        s = ((z.real - c) ** 2 + (z.imag - ts) ** 2) / (2.0 * z.imag * ts)
        grid_min = float(np.log1p(s + np.sqrt(s * (s + 2.0))).min())
        d = vertical_line_distance(z, c)
        assert d == pytest.approx(0.8813735870195429, abs=1e-12)
        assert d <= grid_min + 1e-12
        assert d == pytest.approx(grid_min, abs=1e-5)

    def test_foot_is_the_minimizer(self):
        z, c = complex(1.0, 0.7), -0.5
        d = vertical_line_distance(z, c)
        foot = complex(c, abs(z - c))
        assert halfplane_distance(z, foot) == pytest.approx(d, abs=1e-6)
        for t in np.linspace(0.01, 30.0, 500):
            assert d <= halfplane_distance(z, complex(c, t)) + 1e-12


class TestMetricCircle:
    def test_circle_points_are_equidistant(self):
        center = complex(0.3, 1.2)
        ecenter, eradius = halfplane_metric_circle(center, 0.8)
        for t in np.linspace(0, 2 * math.pi, 48, endpoint=False):
            w = ecenter + eradius * cmath.exp(1j * t)
            assert halfplane_distance(center, w) == pytest.approx(0.8, abs=1e-10)

    def test_kobayashi_radius_doubles(self):
        center = 1j
        ec_p, er_p = halfplane_metric_circle(center, 1.0, MetricMode.POINCARE)
        ec_k, er_k = halfplane_metric_circle(center, 0.5, MetricMode.KOBAYASHI)
        assert ec_p == ec_k and er_p == er_k
