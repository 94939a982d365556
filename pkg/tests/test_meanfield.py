import numpy as np
import pytest

from prodcon import (ParameterError, classify_regime, interior_fixed_point,
                     mf_derivative, mf_integrate, predicted_limit,
                     sign_expression)


class TestDerivative:
    def test_boundary_equilibria(self):
        for a1, a2 in [(0.3, 0.7), (0.9, 0.9), (0.0, 1.0)]:
            assert mf_derivative(0.0, a1, a2) == 0.0
            assert mf_derivative(1.0, a1, a2) == 0.0

    def test_symmetric_interior_fixed_point(self):
        assert mf_derivative(0.5, 0.75, 0.75) == pytest.approx(0.0, abs=1e-15)

    def test_selfish_altruistic_strictly_negative(self):
        assert mf_derivative(0.5, 0.3, 0.7) < 0
        for u in np.linspace(0.01, 0.99, 25):
            assert mf_derivative(u, 0.3, 0.7) < 0

    def test_vanishes_at_interior_fixed_point(self):
        for a1, a2 in [(0.8, 0.9), (0.1, 0.2), (0.6, 0.8)]:
            e = interior_fixed_point(a1, a2)
            assert mf_derivative(e, a1, a2) == pytest.approx(0.0, abs=1e-12)

    def test_sign_matches_closed_form(self):
        rng = np.random.Generator(np.random.PCG64(2718))
        grid = np.linspace(0.01, 0.99, 41)
        for _ in range(100):
            a1, a2 = rng.uniform(0.02, 0.98, 2)
            for u in grid:
                lhs = mf_derivative(u, a1, a2)
                rhs = sign_expression(u, a1, a2)
                if abs(lhs) < 1e-12 or abs(rhs) < 1e-12:
                    assert abs(lhs) < 1e-9 or abs(rhs) < 1e-9
                else:
                    assert np.sign(lhs) == np.sign(rhs)


class TestFixedPoint:
    def test_symmetric_half(self):
        for a in (0.2, 0.8, 0.95):
            assert interior_fixed_point(a, a) == pytest.approx(0.5)

    def test_plugged_value(self):
        assert interior_fixed_point(0.6, 0.8) == pytest.approx(0.12 / 0.14)

    def test_absent_when_straddling(self):
        assert interior_fixed_point(0.3, 0.7) is None
        assert interior_fixed_point(0.7, 0.3) is None

    def test_degenerate_boundary(self):
        assert interior_fixed_point(0.5, 0.8) is None
        assert interior_fixed_point(0.2, 0.5) is None

    def test_in_unit_interval_when_present(self):
        rng = np.random.Generator(np.random.PCG64(7))
        for _ in range(200):
            a1, a2 = rng.uniform(0.0, 1.0, 2)
            e = interior_fixed_point(a1, a2)
            if (a1 - 0.5) * (a2 - 0.5) > 0:
                assert e is not None and 0.0 < e < 1.0


class TestRegimes:
    def test_labels(self):
        assert classify_regime(0.3, 0.7).label == "selfish-wins"
        assert classify_regime(0.8, 0.9).label == "bistable"
        assert classify_regime(0.1, 0.2).label == "coexistence"
        assert classify_regime(0.5, 0.8).label == "neutral-boundary"

    def test_e_star_present_iff_interior_regime(self):
        assert classify_regime(0.3, 0.7).e_star is None
        b = classify_regime(0.8, 0.9)
        assert 0.0 < b.e_star < 1.0
        c = classify_regime(0.1, 0.2)
        assert 0.0 < c.e_star < 1.0


class TestIntegrate:
    def test_boundary_starts_constant(self):
        for u0 in (0.0, 1.0):
            path = mf_integrate(u0, 0.8, 0.9, 10.0, dt=1e-3, sample_interval=1.0)
            assert np.all(path.u1 == u0)

    def test_bistable_split(self):
        e = interior_fixed_point(0.8, 0.9)
        up = mf_integrate(e + 0.05, 0.8, 0.9, 1000.0)
        down = mf_integrate(e - 0.05, 0.8, 0.9, 1000.0)
        assert abs(up.final - 1.0) < 1e-6
        assert abs(down.final - 0.0) < 1e-6

    def test_coexistence_converges_to_interior(self):
        e = interior_fixed_point(0.1, 0.2)
        for u0 in (0.05, 0.5, 0.95):
            path = mf_integrate(u0, 0.1, 0.2, 1000.0)
            assert abs(path.final - e) < 1e-6

    def test_selfish_wins_limit(self):
        path = mf_integrate(0.9, 0.3, 0.7, 1000.0)
        assert abs(path.final - 0.0) < 1e-6

    def test_monotone_in_initial_density(self):
        starts = np.linspace(0.1, 0.9, 5)
        paths = [mf_integrate(u0, 0.85, 0.7, 20.0, sample_interval=1.0).u1
                 for u0 in starts]
        for lo, hi in zip(paths, paths[1:]):
            assert np.all(hi - lo >= -1e-9)

    def test_parameter_validation(self):
        with pytest.raises(ParameterError):
            mf_integrate(1.5, 0.5, 0.5, 1.0)
        with pytest.raises(ParameterError):
            mf_integrate(0.5, 0.5, 0.5, 1.0, dt=0.0)


class TestPredictedLimit:
    def test_all_regimes(self):
        assert predicted_limit(0.3, 0.7, 0.5) == 0.0
        assert predicted_limit(0.7, 0.3, 0.5) == 1.0
        e = interior_fixed_point(0.8, 0.9)
        assert predicted_limit(0.8, 0.9, e + 0.1) == 1.0
        assert predicted_limit(0.8, 0.9, e - 0.1) == 0.0
        assert predicted_limit(0.1, 0.2, 0.4) == interior_fixed_point(0.1, 0.2)
