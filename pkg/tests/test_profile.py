"""Velocity profiles, wall values, and the boundary distribution."""
import math

import numpy as np
import pytest

from kramers.forward import default_density_quad, slip_velocity
from kramers.profile import (
    EXACT_SLIP_DIFFUSE,
    EXACT_WALL_DIFFUSE,
    boundary_distribution,
    combined_density,
    full_profile,
    phi_n,
    velocity_correction,
    wall_velocity,
)
from kramers.quadrature import integrate_halfline
from kramers.spectral import ProblemConfig


@pytest.fixture(scope="module")
def profile_q1(forward3, kern):
    config = ProblemConfig(q=1.0, gradient=1.0, order=3)
    x = np.arange(0.0, 30.5, 0.5)
    return full_profile(config, x, kern, *forward3)


class TestCorrection:
    def test_negative_at_wall(self, forward3):
        assert velocity_correction(forward3[1], 1.0, 1.0, 0.0) < 0

    def test_monotone_decay(self, profile_q1):
        mags = np.abs(profile_q1.correction[profile_q1.x_nodes >= 2.0])
        assert np.all(np.diff(mags) < 0)

    def test_decay_ratio(self, forward3):
        u0 = velocity_correction(forward3[1], 1.0, 1.0, 0.0)
        u20 = velocity_correction(forward3[1], 1.0, 1.0, 20.0)
        assert abs(u20) < 1e-3 * abs(u0)

    def test_x_zero_consistency(self, forward3, grid):
        """At x = 0 the cosine transform degenerates to the plain integral."""
        quad = default_density_quad(grid.k_max)
        direct = sum(
            (1.0 / math.pi) * integrate_halfline(e_n, quad) for e_n in forward3[1]
        )
        assert velocity_correction(forward3[1], 1.0, 1.0, 0.0) == pytest.approx(
            direct, abs=1e-8
        )

    def test_scales_with_gradient(self, forward3):
        a = velocity_correction(forward3[1], 0.5, 2.0, 1.0)
        b = velocity_correction(forward3[1], 0.5, 1.0, 1.0)
        assert a == pytest.approx(2.0 * b, rel=1e-12)


class TestProfile:
    def test_asymptote_fit(self, profile_q1, forward3):
        """Far from the wall, U(x) is the straight line V_sl + g_v x."""
        sel = profile_q1.x_nodes >= 15.0
        slope, intercept = np.polyfit(
            profile_q1.x_nodes[sel], profile_q1.total[sel], 1
        )
        assert slope == pytest.approx(1.0, abs=1e-3)
        assert intercept == pytest.approx(slip_velocity(forward3[0], 1.0, 1.0), abs=1e-3)

    def test_total_is_sum(self, profile_q1):
        assert np.allclose(
            profile_q1.total, profile_q1.asymptote + profile_q1.correction, atol=1e-14
        )

    def test_csv_schema(self, profile_q1):
        text = profile_q1.to_csv()
        lines = text.split("\n")
        assert lines[0] == "x,U_total,U_asymptote,U_correction"
        assert "\r" not in text
        assert len(lines[1].split(",")) == 4

    def test_csv_deterministic(self, profile_q1):
        assert profile_q1.to_csv() == profile_q1.to_csv()

    def test_needs_gradient_drive(self, forward3, kern):
        config = ProblemConfig(gradient=None, slip=1.0)
        with pytest.raises(ValueError):
            full_profile(config, [0.0, 1.0], kern, *forward3)


class TestWall:
    def test_diffuse_partial_sums(self, forward3, kern):
        for order, expected in ((0, 0.674744), (1, 0.710319), (2, 0.706802)):
            got = EXACT_SLIP_DIFFUSE + velocity_correction(
                forward3[1][: order + 1], 1.0, 1.0, 0.0
            )
            assert got == pytest.approx(expected, abs=1e-3)

    def test_near_exact_benchmark(self, forward3, kern):
        config = ProblemConfig(q=1.0, gradient=1.0, order=3)
        got = wall_velocity(config, kern, *forward3)
        assert got == pytest.approx(EXACT_WALL_DIFFUSE, abs=1e-3)

    def test_series_slip_mode(self, forward3, kern):
        config = ProblemConfig(q=1.0, gradient=1.0, order=3)
        exact = wall_velocity(config, kern, *forward3, use_exact_slip=True)
        truncated = wall_velocity(config, kern, *forward3, use_exact_slip=False)
        assert exact != truncated
        assert exact - truncated == pytest.approx(
            EXACT_SLIP_DIFFUSE - slip_velocity(forward3[0], 1.0, 1.0), abs=1e-12
        )

    def test_exact_slip_rejected_off_diffuse(self, forward3, kern):
        config = ProblemConfig(q=0.5, gradient=1.0, order=3)
        with pytest.raises(ValueError):
            wall_velocity(config, kern, *forward3, use_exact_slip=True)


class TestBoundaryDistribution:
    def test_even_in_mu(self, forward3):
        density = combined_density(forward3[1], 1.0, 1.0)
        mu = np.array([0.25, 1.0, 2.0])
        plus = boundary_distribution(density, mu)
        minus = boundary_distribution(density, -mu)
        assert np.allclose(plus.values, minus.values, rtol=1e-10)

    def test_combined_density_prefactor(self, forward3):
        q, g_v = 0.5, 2.0
        density = combined_density(forward3[1], q, g_v)
        manual = 2.0 * g_v * (2.0 - q) * sum(
            q**n * e_n(1.3) for n, e_n in enumerate(forward3[1])
        )
        assert density(1.3) == pytest.approx(manual, rel=1e-12)


class TestSpectralPhase:
    def test_real_at_k_zero(self, forward3):
        val = phi_n(0, 0.0, 0.7, forward3[0], forward3[1])
        assert val.imag == pytest.approx(0.0, abs=1e-14)

    def test_modulus_identity(self, forward3, kern):
        k, mu = 1.0, 0.5
        val = phi_n(0, k, mu, forward3[0], forward3[1])
        lhs = abs(1.0 + 1j * k * mu) ** 2 * abs(val) ** 2
        e0 = forward3[1][0]
        v0 = forward3[0].coefficients[0]
        rhs = abs(e0(k) + mu * mu - v0 * abs(mu)) ** 2
        assert lhs == pytest.approx(rhs, abs=1e-12)
