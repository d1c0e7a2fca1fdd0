"""Tests for dilations, Hausdorff-limit diagnostics and boundary experiments."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from biholo.domains import (
    HalfPlaneC,
    Multitype,
    PuncturedDisc,
    Siegel,
    WeightedModel,
    contains,
    modulus_power,
)
from biholo.scaling import (
    AnisotropicDilation,
    BoundaryApproach,
    IsotropicDilation,
    ball_inclusion_check,
    complex_grid,
    convergence_experiment,
    disc_defining,
    hausdorff_check,
    invariance_check,
    loglog_slope,
    make_anisotropic,
    make_isotropic,
    tangential_modulus_remainder,
)

small_complex = st.complex_numbers(max_magnitude=3.0, allow_infinity=False, allow_nan=False)


def disc_family(j_start=1, j_end=12):
    approach = BoundaryApproach.geometric((1.0,), (1.0,), j_start, j_end)
    return make_isotropic(disc_defining(), approach)


def quartic_family(remainder_exponent=None, j_end=10):
    mt = Multitype((1, 4))
    approach = BoundaryApproach.geometric((0j, 0j), (0j, 1.0), 1, j_end)
    if remainder_exponent is None:
        return make_anisotropic(modulus_power(1, 0, 2), mt, approach)
    rem, rate = tangential_modulus_remainder((remainder_exponent,), mt)
    return make_anisotropic(
        modulus_power(1, 0, 2), mt, approach, rem, gamma=1.5, remainder_rate=rate
    )


class TestBoundaryApproach:
    def test_points_march_inward(self):
        approach = BoundaryApproach.geometric((1.0,), (1.0,), 1, 5)
        for p, d in zip(approach.points(), approach.deltas):
            assert p[0] == pytest.approx(1.0 - d, abs=1e-15)

    def test_steps_must_decrease(self):
        with pytest.raises(ValueError):
            BoundaryApproach((1.0,), (1.0,), (0.1, 0.2))

    def test_labels_follow_the_exponents(self):
        approach = BoundaryApproach.geometric((1.0,), (1.0,), 3, 7)
        assert approach.js == (3, 4, 5, 6, 7)


class TestIsotropicFamily:
    def test_limit_is_the_expected_halfplane(self):
        """|z|^2 - 1 at the boundary point 1 rescales to {2 Re z < 1}."""
        fam = disc_family()
        assert isinstance(fam.limit, HalfPlaneC)
        assert fam.limit.linear_coeff == pytest.approx(1.0, abs=1e-12)
        assert contains(fam.limit, 0j)

    def test_base_point_image_converges_to_half(self):
        fam = disc_family(1, 10)
        for dil, d in zip(fam.dilations, fam.approach.deltas):
            img = dil.forward((1.0 + 0j,))[0]
            assert img == pytest.approx(1.0 / (2.0 - d), abs=1e-12)

    def test_normalization_is_exact(self):
        fam = disc_family()
        for dil, p in zip(fam.dilations, fam.approach.points()):
            assert abs(dil.forward(p)[0]) <= 1e-12

    def test_numeric_gradient_agrees_with_analytic(self):
        from biholo.scaling import PlanarDefiningFunction

        numeric = PlanarDefiningFunction(func=lambda z: abs(z) ** 2 - 1.0)
        analytic = disc_defining()
        for z in (1.0 + 0j, 0.5 + 0.5j, -0.2 + 0.9j):
            assert numeric.wirtinger(z) == pytest.approx(analytic.wirtinger(z), abs=1e-8)

    def test_vanishing_gradient_rejected(self):
        from biholo.scaling import PlanarDefiningFunction

        flat = PlanarDefiningFunction(func=lambda z: abs(z) ** 4 - abs(z) ** 2)
        approach = BoundaryApproach((0j,), (1.0,), (0.5, 0.25))
        with pytest.raises(ValueError, match="gradient"):
            make_isotropic(flat, approach)

    def test_exterior_approach_rejected(self):
        approach = BoundaryApproach((1.0,), (-1.0,), (0.5, 0.25))  # marches outward
        with pytest.raises(ValueError, match="inside"):
            make_isotropic(disc_defining(), approach)

    @given(z=small_complex)
    @settings(max_examples=300)
    def test_round_trip(self, z):
        dil = IsotropicDilation(center=0.875 + 0j, scale=0.234375)
        back = dil.inverse(dil.forward(z))[0]
        assert abs(back - z) <= 1e-12 * (1.0 + abs(z))


class TestHausdorffCheck:
    def test_disc_family_passes_with_unit_slope(self):
        fam = disc_family(3, 12)
        report = hausdorff_check(fam, complex_grid(-2, 2, -2, 2, 21), tol=1e-2)
        assert report.passed
        assert report.slope == pytest.approx(1.0, abs=0.15)
        assert report.rows[-1].membership_agreement > 0.99

    def test_empirical_constant_is_reported(self):
        fam = disc_family(1, 8)
        report = hausdorff_check(fam, complex_grid(-2, 2, -2, 2, 15), tol=5e-2)
        # sup |difference| = 2 delta |Re w| + (2 delta - delta^2)|w|^2 <= ~20 delta
        assert 10.0 < report.empirical_constant < 21.0

    def test_zero_remainder_scales_exactly(self):
        """Exact weight-one data rescales onto the limit up to float dust."""
        fam = quartic_family(remainder_exponent=None)
        grid = [(complex(a, b), complex(c, 0.2)) for a in (-1, 1) for b in (0, 1) for c in (-1, 0.5)]
        report = hausdorff_check(fam, grid, tol=1e-12)
        assert report.passed
        assert all(r.sup_error <= 1e-13 for r in report.rows)

    def test_sextic_remainder_decays_at_the_weight_rate(self):
        """|z1|^6 under (1, 4) rescales like delta^(1/2)."""
        fam = quartic_family(remainder_exponent=6)
        assert fam.remainder_rate == pytest.approx(0.5, abs=1e-15)
        grid = [
            (complex(a, b), complex(c, d))
            for a in (-1.0, 0.5, 1.0)
            for b in (-1.0, 0.0, 1.0)
            for c in (-1.0, 0.0, 1.0)
            for d in (-0.5, 0.5)
        ]
        report = hausdorff_check(fam, grid, tol=1e-1)
        assert report.slope == pytest.approx(0.5, abs=0.1)

    def test_siegel_limit_for_sum_of_squares(self):
        """|z1|^2 + |z2|^2 with multitype (1, 2, 2) scales to the unbounded
        ball realization."""
        mt = Multitype((1, 2, 2))
        poly = modulus_power(2, 0, 1) + modulus_power(2, 1, 1)
        approach = BoundaryApproach.geometric((0j, 0j, 0j), (0j, 0j, 1.0), 1, 8)
        fam = make_anisotropic(poly, mt, approach)
        assert fam.limit == Siegel(3)
        assert fam.basepoint == (0j, 0j, -1.0 + 0j)
        assert contains(fam.limit, fam.basepoint)
        from biholo.domains import defining_value

        assert defining_value(fam.limit, fam.basepoint) == pytest.approx(-2.0, abs=1e-15)


class TestAnisotropicDilations:
    def test_basepoint_normalization(self):
        fam = quartic_family()
        for dil, p in zip(fam.dilations, fam.approach.points()):
            img = dil.forward(p)
            assert max(abs(u - v) for u, v in zip(img, fam.basepoint)) <= 1e-12

    def test_inhomogeneous_polynomial_rejected(self):
        mt = Multitype((1, 4))
        bad = modulus_power(1, 0, 2) + modulus_power(1, 0, 1, 2.0)
        approach = BoundaryApproach.geometric((0j, 0j), (0j, 1.0), 1, 5)
        with pytest.raises(ValueError, match="homogeneous"):
            make_anisotropic(bad, mt, approach)

    def test_remainder_requires_gamma(self):
        mt = Multitype((1, 4))
        approach = BoundaryApproach.geometric((0j, 0j), (0j, 1.0), 1, 5)
        rem, _ = tangential_modulus_remainder((6,), mt)
        with pytest.raises(ValueError, match="gamma"):
            make_anisotropic(modulus_power(1, 0, 2), mt, approach, rem, gamma=0.9)

    def test_unnormalized_coordinates_rejected(self):
        mt = Multitype((1, 4))
        approach = BoundaryApproach.geometric((0.5 + 0j, 0j), (0j, 1.0), 1, 5)
        with pytest.raises(ValueError, match="normalized"):
            make_anisotropic(modulus_power(1, 0, 2), mt, approach)

    @given(
        a=st.floats(-2, 2), b=st.floats(-2, 2), c=st.floats(-2, 2), d=st.floats(-2, 2),
        delta=st.floats(0.01, 1.9),
    )
    @settings(max_examples=300)
    def test_round_trip(self, a, b, c, d, delta):
        dil = AnisotropicDilation(Multitype((1, 4)), delta)
        z = (complex(a, b), complex(c, d))
        back = dil.inverse(dil.forward(z))
        assert max(abs(u - v) for u, v in zip(back, z)) <= 1e-12 * (1.0 + max(map(abs, z)))


class TestInvarianceCheck:
    def test_square_modulus_invariant(self):
        assert invariance_check(modulus_power(1, 0, 1), Multitype((1, 2)), trials=10_000)

    def test_quartic_invariant(self):
        assert invariance_check(modulus_power(1, 0, 2), Multitype((1, 4)), trials=10_000)

    def test_sum_of_squares_invariant(self):
        poly = modulus_power(2, 0, 1) + modulus_power(2, 1, 1)
        assert invariance_check(poly, Multitype((1, 2, 2)), trials=10_000)

    def test_inhomogeneous_counterexample(self):
        bad = modulus_power(1, 0, 2) + modulus_power(1, 0, 1, 2.0)
        assert not invariance_check(bad, Multitype((1, 4)), trials=10_000)

    def test_exact_scaling_identity_on_memberships(self):
        """For weight-one data the defining value scales exactly by 1/delta."""
        rng = np.random.default_rng(17)
        mt = Multitype((1, 4))
        poly = modulus_power(1, 0, 2)
        model = WeightedModel(mt, poly)
        from biholo.domains import defining_value, sample_point

        for _ in range(500):
            z = sample_point(model, rng)
            delta = float(rng.uniform(0.05, 2.0))
            dil = AnisotropicDilation(mt, delta)
            lhs = defining_value(model, dil.forward(z))
            rhs = defining_value(model, z) / delta
            assert lhs == pytest.approx(rhs, rel=1e-12)


class TestBallInclusion:
    def test_disc_family_stabilizes(self):
        fam = disc_family(1, 12)
        report = ball_inclusion_check(fam, radius=1.0, eps=0.1, samples=120, seed=0)
        assert report.passed
        assert report.j0 is not None
        for row in report.rows:
            if row.j >= report.j0:
                assert row.inside

    def test_small_radius_passes_early(self):
        fam = disc_family(1, 8)
        report = ball_inclusion_check(fam, radius=0.1, eps=0.05, samples=80, seed=0)
        assert report.passed
        assert report.j0 <= 3

    def test_zero_eps_is_allowed_but_not_required_to_pass(self):
        fam = disc_family(1, 8)
        report = ball_inclusion_check(fam, radius=0.5, eps=0.0, samples=80, seed=0)
        assert isinstance(report.passed, bool)

    def test_exactly_invariant_family_is_trivial(self):
        mt = Multitype((1, 2, 2))
        poly = modulus_power(2, 0, 1) + modulus_power(2, 1, 1)
        approach = BoundaryApproach.geometric((0j, 0j, 0j), (0j, 0j, 1.0), 1, 6)
        fam = make_anisotropic(poly, mt, approach)
        report = ball_inclusion_check(fam, radius=1.0, eps=0.1, samples=60, seed=0)
        assert report.passed
        assert report.j0 == 1

    def test_unsupported_family_raises(self):
        fam = quartic_family()  # quartic model: no computable distance
        with pytest.raises(ValueError, match="distance"):
            ball_inclusion_check(fam, radius=1.0, eps=0.1, samples=40, seed=0)


class TestConvergenceExperiment:
    def test_upper_bound_decreases_along_the_approach(self):
        approach = BoundaryApproach.geometric((1.0,), (1.0,), 1, 10)
        report = convergence_experiment(PuncturedDisc(), approach)
        assert report.strictly_decreasing
        assert report.rows[2].upper_bound < report.rows[0].upper_bound

    def test_known_value_at_nine_tenths(self):
        approach = BoundaryApproach((1.0,), (1.0,), (0.2, 0.1))
        report = convergence_experiment(PuncturedDisc(), approach)
        assert report.rows[-1].modulus == pytest.approx(0.9, abs=1e-15)
        assert report.rows[-1].upper_bound == pytest.approx(0.2445869566227784, abs=1e-12)

    def test_other_domains_rejected(self):
        approach = BoundaryApproach((1.0,), (1.0,), (0.5,))
        with pytest.raises(ValueError, match="punctured"):
            convergence_experiment(HalfPlaneC(1.0), approach)


class TestSlopeFit:
    def test_clean_power_law(self):
        pairs = [(2.0**-j, 7.0 * 2.0**-j) for j in range(3, 13)]
        assert loglog_slope(pairs) == pytest.approx(1.0, abs=1e-12)

    def test_degenerate_data(self):
        assert loglog_slope([(0.5, 0.0), (0.25, 0.0)]) is None
