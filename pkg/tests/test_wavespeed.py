import dataclasses
import math

import numpy as np
import pytest

import denguefront as df
from conftest import random_nondim


def dispersion_relation_gap(n, m, c, a, k):
    """Residual of (y - B)(y + A) - K at y = c m (direct evaluation)."""
    b = m * m + 2.0 * n.nu * m - n.mu1
    y = c * m
    return (y - b) * (y + a) - k


class TestDispersionSpeed:
    def test_hand_evaluated_point(self, n30_nowind):
        # quadratic-root formula evaluated by hand for m = 0.4 at 30 C, no wind
        c = df.dispersion_speed(0.4, n30_nowind, df.MOSQUITO_INVASION)
        assert c == pytest.approx(0.585383, rel=1e-5)

    def test_returned_speed_solves_relation(self, rng):
        for _ in range(200):
            n = random_nondim(rng, q0_regime="super")
            m = float(10.0 ** rng.uniform(-2, 0.5))
            c = df.dispersion_speed(m, n, df.MOSQUITO_INVASION)
            gap = dispersion_relation_gap(n, m, c, n.gamma + n.mu2, n.gamma)
            assert abs(gap) < 1e-12 * max(1.0, abs(n.gamma))

    def test_cubic_root_equivalence(self, rng):
        # the speed forced by decay rate m makes -m a root of the
        # characteristic cubic (the two formulations are algebraically equal)
        for _ in range(300):
            n = random_nondim(rng, q0_regime="super")
            m = float(10.0 ** rng.uniform(-2, 0.5))
            c = df.dispersion_speed(m, n, df.MOSQUITO_INVASION)
            cubic = df.cubic_phat(n, c, df.MOSQUITO_INVASION)
            assert abs(cubic(-m)) < 1e-10

    def test_wind_shift_bounded(self, n30, n30_nowind, rng):
        for _ in range(50):
            m = float(10.0 ** rng.uniform(-1.5, 0.5))
            c_wind = df.dispersion_speed(m, n30, df.MOSQUITO_INVASION)
            c_calm = df.dispersion_speed(m, n30_nowind, df.MOSQUITO_INVASION)
            assert 0.0 <= c_wind - c_calm <= 2.0 * n30.nu + 1e-12

    def test_no_front_below_threshold(self, rng, n15):
        n_sub = random_nondim(rng, q0_regime="sub")
        with pytest.raises(df.NoFrontError, match="offspring"):
            df.dispersion_speed(0.3, n_sub, df.MOSQUITO_INVASION)
        # dengue with tiny v* pushes R0 below 1
        with pytest.raises(df.NoFrontError, match="reproduction"):
            df.dispersion_speed(0.3, n15, df.DENGUE_DISPERSION,
                                v_star=1e-4, h_star=1.0)

    def test_domain_errors(self, n30):
        with pytest.raises(df.DomainError):
            df.dispersion_speed(0.0, n30, df.MOSQUITO_INVASION)
        with pytest.raises(df.DomainError):
            df.dispersion_speed(0.3, n30, "walking")
        with pytest.raises(df.DomainError, match="v_star"):
            df.dispersion_speed(0.3, n30, df.DENGUE_DISPERSION)


class TestMinWaveSpeed:
    def test_mosquito_invasion_regressions(self, d30):
        scale = df.speed_scale(d30)
        calm = df.min_wave_speed(
            df.nondimensionalize(dataclasses.replace(d30, nu2_bar=0.0)),
            df.MOSQUITO_INVASION, scale_km_per_day=scale)
        assert calm.c_bar_year == pytest.approx(75.46, rel=1e-2)
        windy = df.min_wave_speed(df.nondimensionalize(d30),
                                  df.MOSQUITO_INVASION, scale_km_per_day=scale)
        assert windy.c_bar_year == pytest.approx(89.67, rel=1e-2)
        assert round(windy.c_min, 2) == 0.69

    def test_dengue_dispersion_regressions(self, d15_unit):
        scale = df.speed_scale(d15_unit)
        calm = df.min_wave_speed(
            df.nondimensionalize(dataclasses.replace(d15_unit, nu2_bar=0.0)),
            df.DENGUE_DISPERSION, v_star=0.7, h_star=1.0,
            scale_km_per_day=scale)
        assert calm.c_bar_year == pytest.approx(24.08, rel=1e-2)
        windy = df.min_wave_speed(df.nondimensionalize(d15_unit),
                                  df.DENGUE_DISPERSION, v_star=0.7,
                                  h_star=1.0, scale_km_per_day=scale)
        assert windy.c_bar_year == pytest.approx(38.72, rel=1e-2)

    def test_tangency_residuals(self, n30, n30_nowind, rng):
        for n in (n30, n30_nowind):
            res = df.min_wave_speed(n, df.MOSQUITO_INVASION)
            assert res.tangency_residuals[0] < 1e-8
            assert res.tangency_residuals[1] < 1e-8
        for _ in range(50):
            n = random_nondim(rng, q0_regime="super")
            res = df.min_wave_speed(n, df.MOSQUITO_INVASION)
            assert max(res.tangency_residuals) < 1e-8

    def test_double_root_splits_with_speed_perturbation(self, n30):
        res = df.min_wave_speed(n30, df.MOSQUITO_INVASION)

        def real_roots_near_minus_m(c):
            cubic = df.cubic_phat(n30, c, df.MOSQUITO_INVASION)
            return [z for z in cubic.roots()
                    if abs(z.imag) < 1e-9
                    and abs(z.real + res.m_star) < 0.3 * res.m_star]

        assert len(real_roots_near_minus_m(res.c_min + 1e-3)) == 2
        assert len(real_roots_near_minus_m(res.c_min - 1e-3)) == 0

    def test_minimum_is_genuine(self, n30):
        res = df.min_wave_speed(n30, df.MOSQUITO_INVASION)
        for factor in (0.9, 0.95, 1.05, 1.1):
            c = df.dispersion_speed(res.m_star * factor, n30,
                                    df.MOSQUITO_INVASION)
            assert c >= res.c_min - 1e-12

    def test_monotone_in_wind_and_growth(self, d30, rng):
        base = df.nondimensionalize(dataclasses.replace(d30, nu2_bar=0.0))
        speeds = []
        for nu in (0.0, 0.05, 0.1, 0.2):
            n = dataclasses.replace(base, nu=nu)
            speeds.append(df.min_wave_speed(n, df.MOSQUITO_INVASION).c_min)
        assert np.all(np.diff(speeds) > 0)
        # monotone in the offspring number via mu2
        speeds = []
        for mu2 in (0.02, 0.01, 0.005, 0.002):
            n = dataclasses.replace(base, mu2=mu2)
            speeds.append(df.min_wave_speed(n, df.MOSQUITO_INVASION).c_min)
        assert np.all(np.diff(speeds) > 0)

    def test_wind_bound(self, rng, n30):
        for _ in range(30):
            n = random_nondim(rng, q0_regime="super")
            calm = df.min_wave_speed(dataclasses.replace(n, nu=0.0),
                                     df.MOSQUITO_INVASION).c_min
            windy = df.min_wave_speed(n, df.MOSQUITO_INVASION).c_min
            assert calm - 1e-10 <= windy <= calm + 2.0 * n.nu + 1e-10
        # in the field-parameter regime the front outruns pure advection
        # (not a universal law: the aquatic stage does not advect, so weak
        # growth under strong wind can lag it)
        assert df.min_wave_speed(n30, df.MOSQUITO_INVASION).c_min >= 2.0 * n30.nu

    def test_dengue_speed_increases_with_vstar(self, n15_unit):
        speeds = [df.min_wave_speed(n15_unit, df.DENGUE_DISPERSION,
                                    v_star=v, h_star=1.0).c_min
                  for v in (0.2, 0.4, 0.8)]
        assert speeds[0] < speeds[1] < speeds[2]

    def test_unit_time_rescaling_gives_same_dimensional_speed(self, d30):
        # same physical system written in half-day units: km/day speed agrees
        half = df.DimensionalParams(
            D_bar=d30.D_bar / 2, nu2_bar=d30.nu2_bar / 2, r0_bar=d30.r0_bar / 2,
            k1=d30.k1, k2=d30.k2, gamma_bar=d30.gamma_bar / 2,
            mu1_bar=d30.mu1_bar / 2, mu2_bar=d30.mu2_bar / 2, mu3_bar=0.0,
            beta1_bar=d30.beta1_bar / 2, beta2_bar=d30.beta2_bar / 2,
            sigma_bar=d30.sigma_bar / 2, N_bar=d30.N_bar)
        c_day = df.min_wave_speed(df.nondimensionalize(d30),
                                  df.MOSQUITO_INVASION,
                                  scale_km_per_day=df.speed_scale(d30)).c_bar_day
        c_halfday = df.min_wave_speed(df.nondimensionalize(half),
                                      df.MOSQUITO_INVASION,
                                      scale_km_per_day=df.speed_scale(half)).c_bar_day
        assert c_day == pytest.approx(2.0 * c_halfday, rel=1e-8)

    def test_bracketing_failure_diagnostic(self, n30):
        with pytest.raises(df.BracketingError):
            df.min_wave_speed(n30, df.MOSQUITO_INVASION, max_doublings=0)

    def test_against_wind_front(self, n30, n30_nowind):
        against = df.min_wave_speed(n30, df.MOSQUITO_INVASION, wind_sign=-1)
        calm = df.min_wave_speed(n30_nowind, df.MOSQUITO_INVASION)
        windy = df.min_wave_speed(n30, df.MOSQUITO_INVASION)
        assert against.c_min < calm.c_min < windy.c_min
        assert calm.c_min - 2.0 * n30.nu - 1e-10 <= against.c_min
        assert max(against.tangency_residuals) < 1e-8


class TestCubicPhat:
    def test_unit_offspring_zero_constant(self, n15_unit):
        cubic = df.cubic_phat(n15_unit, 0.5, df.MOSQUITO_INVASION)
        assert abs(cubic.a0) < 1e-14

    def test_constant_terms(self, n30, rng):
        # constant term mu1 (gamma+mu2)(1-Q0)/c: negative in the front regime
        # (its magnitude is the published expression with the opposite sign)
        for c in (0.3, 0.69, 1.7):
            cubic = df.cubic_phat(n30, c, df.MOSQUITO_INVASION)
            q0 = df.basic_offspring_number(n30)
            assert cubic.a0 == pytest.approx(
                n30.mu1 * (n30.gamma + n30.mu2) * (1.0 - q0) / c, rel=1e-12)
            assert cubic.a0 < 0.0
        for _ in range(50):
            n = random_nondim(rng)
            v_star, h_star = float(rng.uniform(0.1, 2)), float(rng.uniform(0.1, 1))
            u_star = v_star * n.gamma / (n.k * n.mu1)
            r0 = n.beta1 * n.beta2 * u_star * h_star / (n.mu1 * n.sigma)
            cubic = df.cubic_phat(n, 0.8, df.DENGUE_DISPERSION,
                                  v_star=v_star, h_star=h_star)
            assert cubic.a0 == pytest.approx(
                n.mu1 * n.sigma * (1.0 - r0) / 0.8, rel=1e-12, abs=1e-15)

    def test_matches_wave_jacobian_block(self, n30, n15_unit):
        # invasion cubic = characteristic polynomial of the (u, du, v) block
        c = 0.69
        jac = df.wave_jacobian(df.wave_free_point(1.0), n30, c)
        block = jac[np.ix_([0, 1, 4], [0, 1, 4])]
        dense = np.poly(block)
        ours = df.cubic_phat(n30, c, df.MOSQUITO_INVASION).coefficients()
        assert np.abs(ours - dense).max() < 1e-12
        # dengue cubic = characteristic polynomial of the (w, dw, I) block
        point = df.wave_endemic_point(n15_unit, 1.0, 0.7)
        jac = df.wave_jacobian(point, n15_unit, 0.5)
        block = jac[np.ix_([2, 3, 6], [2, 3, 6])]
        dense = np.poly(block)
        ours = df.cubic_phat(n15_unit, 0.5, df.DENGUE_DISPERSION,
                             v_star=0.7, h_star=1.0).coefficients()
        assert np.abs(ours - dense).max() < 1e-12

    def test_zero_speed_rejected(self, n30):
        with pytest.raises(df.DomainError):
            df.cubic_phat(n30, 0.0, df.MOSQUITO_INVASION)


class TestWaveJacobian:
    def test_spectrum_matches_dense(self, rng, n15_unit):
        for _ in range(100):
            n = random_nondim(rng)
            c = float(rng.uniform(0.1, 2.0))
            point = df.wave_free_point(float(rng.uniform(0, 1)))
            cf = df.wave_spectrum(point, n, c)
            de = df.dense_spectrum(df.wave_jacobian(point, n, c))
            assert df.match_spectra(cf, de) < 1e-10
        point = df.wave_endemic_point(n15_unit, 1.0, 0.7)
        for c in (0.3, 0.77):
            cf = df.wave_spectrum(point, n15_unit, c)
            de = df.dense_spectrum(df.wave_jacobian(point, n15_unit, c))
            assert df.match_spectra(cf, de) < 1e-10

    def test_exactly_two_zero_columns_at_free_point(self, n30):
        jac = df.wave_jacobian(df.wave_free_point(1.0), n30, 0.69)
        zero_cols = [j for j in range(8) if np.all(jac[:, j] == 0.0)]
        assert zero_cols == [5, 7]     # susceptible and recovered directions

    def test_transport_quadratic_always_real(self, rng):
        # the (u, du) factor lambda^2 - (2 nu - c) lambda - mu1 has
        # discriminant (2 nu - c)^2 + 4 mu1 > 0
        for _ in range(100):
            n = random_nondim(rng)
            c = float(rng.uniform(0.05, 3.0))
            disc = (2 * n.nu - c) ** 2 + 4 * n.mu1
            assert disc > 0
            jac = df.wave_jacobian(df.wave_free_point(1.0), n, c)
            block = jac[np.ix_([2, 3], [2, 3])]
            assert np.all(np.abs(np.linalg.eigvals(block).imag) < 1e-14)

    def test_scope_guards(self, n30):
        with pytest.raises(df.DomainError):
            df.wave_jacobian(df.wave_free_point(1.0), n30, -0.5)
        n_exp = dataclasses.replace(n30, p=1.0)
        with pytest.raises(df.UnsupportedVariantError):
            df.wave_jacobian(df.wave_free_point(1.0), n_exp, 0.5)
        with pytest.raises(df.DomainError):
            df.wave_jacobian(df.mosquito_free_point(1.0), n30, 0.5)


class TestSweep:
    # published speed lists for aquatic backgrounds 0.1 .. 1.0
    CALM = [4.6026, 12.7056, 16.4107, 18.9825, 20.9895, 22.6519, 24.0797,
            25.3367, 26.463, 27.4859]
    WINDY = [19.3765, 27.5711, 31.2148, 33.7331, 35.6967, 37.3231, 38.7206,
             39.9514, 41.055, 42.0577]

    def test_reproduces_published_values(self, d15_unit):
        v_list = [round(0.1 * i, 1) for i in range(1, 11)]
        table = df.sweep_vstar(d15_unit, v_list)
        for row, calm, windy in zip(table.rows, self.CALM, self.WINDY):
            assert row.c_nowind == pytest.approx(calm, rel=1e-2)
            assert row.c_wind == pytest.approx(windy, rel=1e-2)

    def test_csv_schema(self, d15_unit):
        table = df.sweep_vstar(d15_unit, [0.1, 0.7])
        lines = table.to_csv().splitlines()
        assert lines[0] == "v_star,c_min_nowind_km_per_year,c_min_wind_km_per_year"
        assert lines[1].startswith("0.1000,")
        cells = lines[2].split(",")
        assert cells == [f"{0.7:.4f}", f"{table.rows[1].c_nowind:.4f}",
                         f"{table.rows[1].c_wind:.4f}"]

    def test_no_front_rows_do_not_abort(self, d15_unit):
        weak = dataclasses.replace(d15_unit, beta1_bar=1e-6)
        table = df.sweep_vstar(weak, [0.1, 0.7])
        assert all(row.c_nowind is None and row.c_wind is None
                   for row in table.rows)
        assert "no-front" in table.to_csv()

    def test_empty_sweep(self, d15_unit):
        table = df.sweep_vstar(d15_unit, [])
        assert table.to_csv().splitlines() == [
            "v_star,c_min_nowind_km_per_year,c_min_wind_km_per_year"]

    def test_invalid_vstar(self, d15_unit):
        with pytest.raises(df.DomainError):
            df.sweep_vstar(d15_unit, [0.0])


def test_dispersion_curve(n30):
    curve = df.dispersion_curve(n30, df.MOSQUITO_INVASION,
                                np.geomspace(0.05, 2.0, 50))
    assert curve.shape == (50, 2)
    res = df.min_wave_speed(n30, df.MOSQUITO_INVASION)
    assert curve[:, 1].min() >= res.c_min - 1e-9
