"""Inverse problem: recover the gradient from an imposed slip velocity."""
import numpy as np
import pytest

from kramers.forward import default_density_quad, slip_velocity
from kramers.inverse import (
    W0_EXACT,
    apply_operator_inv,
    build_e0_inv,
    gradient,
    w_coefficient,
)
from kramers.kernels import SQRT_PI
from kramers.spectral import SeriesExpansion


class TestZerothIterate:
    def test_value_at_zero(self, kern, grid):
        e0 = build_e0_inv(kern, grid)
        assert e0(0.0) == pytest.approx(-1.0 / SQRT_PI, abs=1e-14)

    def test_matches_ratio(self, kern, grid):
        e0 = build_e0_inv(kern, grid)
        for k in (0.02, 1.0, 10.0):
            assert e0(k) == pytest.approx(
                kern.phi0_inv(k) / kern.t_n(2, k), rel=1e-6, abs=1e-10
            )


class TestCoefficients:
    def test_w0_exact(self, inverse3):
        assert inverse3[0].coefficients[0] == W0_EXACT == 2.0 / SQRT_PI

    def test_sign_alternation(self, inverse3):
        w = inverse3[0].coefficients
        assert w[1] < 0 < w[2] and w[3] < 0

    def test_decay(self, inverse3):
        w = [abs(c) for c in inverse3[0].coefficients]
        assert w[3] < w[2] < w[1] < w[0]

    def test_linearity(self, kern, grid, inverse3):
        quad = default_density_quad(grid.k_max)
        e0 = inverse3[1][0]
        scaled = e0.map(4.0 * e0(grid.nodes), value_at_zero=4.0 * e0(0.0))
        assert w_coefficient(kern, scaled, quad) == pytest.approx(
            4.0 * w_coefficient(kern, e0, quad), rel=1e-9
        )


class TestOperator:
    def test_pole_cancellation(self, inverse3):
        for e_n in inverse3[1][1:]:
            assert e_n(1e-3) == pytest.approx(e_n(1e-2), rel=0.01)

    def test_linearity(self, kern, grid, inverse3):
        quad = default_density_quad(grid.k_max)
        e0 = inverse3[1][0]
        scaled = e0.map(0.5 * e0(grid.nodes), value_at_zero=0.5 * e0(0.0))
        a = apply_operator_inv(kern, scaled, quad)
        b = inverse3[1][1]
        assert np.allclose(a(grid.nodes), 0.5 * b(grid.nodes), rtol=1e-8, atol=1e-12)


class TestGradient:
    def test_reference_partial_sums(self, inverse3):
        series = inverse3[0]
        for n, expected in enumerate((1.128379, 0.949460, 0.992543, 0.981987)):
            assert series.partial_sum(1.0, n) == pytest.approx(expected, abs=5e-4)

    def test_zero_at_q_zero(self, inverse3):
        assert gradient(inverse3[0], 0.0, 1.0) == 0.0

    def test_scales_with_slip(self, inverse3):
        assert gradient(inverse3[0], 0.6, 3.0) == pytest.approx(
            3.0 * gradient(inverse3[0], 0.6, 1.0), rel=1e-12
        )

    def test_reciprocity_with_forward(self, forward3, inverse3):
        v_sl = slip_velocity(forward3[0], 1.0, 1.0)
        assert gradient(inverse3[0], 1.0, v_sl) == pytest.approx(1.0, abs=1e-2)

    def test_wrong_kind_rejected(self, forward3):
        with pytest.raises(ValueError):
            gradient(forward3[0], 1.0, 1.0)
