"""Fourier transforms: quadrature hygiene, closed forms, and bounds."""
from __future__ import annotations

import math

import numpy as np
import pytest

from fenchellab.fourier import (
    QuadratureSpec,
    derivative_transform,
    fourier,
    fourier_at,
    inverse_fourier,
    parseval_residual,
    surface_constant,
    transform_axes,
    verify_pointwise_transform_bound,
    verify_theorem3_bound,
)
from fenchellab.testfunctions import gaussian, hermite_gaussian, product, zero


class TestSurfaceConstants:
    def test_closed_forms(self):
        assert surface_constant(1).s_n == pytest.approx(2.0, rel=1e-15)
        assert surface_constant(2).s_n == pytest.approx(2.0 * math.pi, rel=1e-15)
        assert surface_constant(3).s_n == pytest.approx(4.0 * math.pi, rel=1e-15)

    def test_dimension_validation(self):
        for bad in (0, 4):
            with pytest.raises(ValueError):
                surface_constant(bad)


class TestQuadratureSpec:
    def test_node_count_validation(self):
        with pytest.raises(ValueError):
            QuadratureSpec(8.0, 15)
        with pytest.raises(ValueError):
            QuadratureSpec(8.0, 8)

    def test_rule_validation(self):
        with pytest.raises(ValueError):
            QuadratureSpec(8.0, 64, rule="simpson")

    def test_radius_validation(self):
        with pytest.raises(ValueError):
            QuadratureSpec(-1.0, 64)

    def test_for_function_controls_tail(self):
        spec = QuadratureSpec.for_function(gaussian(0.5, 1))
        assert spec.tail_bound <= 1e-12


class TestClosedForms:
    def test_gaussian_self_duality(self):
        xi = np.array([[-2.0], [-0.5], [0.0], [1.0], [2.5]])
        vals = fourier_at(gaussian(0.5, 1), xi)
        exact = math.sqrt(2.0 * math.pi) * np.exp(-0.5 * xi[:, 0] ** 2)
        np.testing.assert_allclose(vals.real, exact, atol=1e-10)
        np.testing.assert_allclose(vals.imag, 0.0, atol=1e-10)

    def test_2d_gaussian_factorizes(self):
        f2 = product(gaussian(0.5, 1), gaussian(0.5, 1))
        pts = np.array([[0.0, 0.0], [1.0, -0.5]])
        vals = fourier_at(f2, pts)
        exact = 2.0 * math.pi * np.exp(-0.5 * np.sum(pts ** 2, axis=1))
        np.testing.assert_allclose(vals.real, exact, atol=1e-9)

    def test_linearity_in_scaling(self):
        xi = np.array([[0.7]])
        one = fourier_at(hermite_gaussian(2, 0.5), xi)
        scaled = fourier_at(hermite_gaussian(2, 0.5) * 2.5, xi)
        assert scaled[0] == pytest.approx(2.5 * one[0], rel=1e-12)

    def test_zero_function_transforms_to_zero(self):
        vals = fourier_at(zero(1), np.array([[0.0], [1.0]]))
        np.testing.assert_allclose(np.abs(vals), 0.0, atol=1e-15)

    def test_derivative_transform_multiplies_by_i_xi(self):
        f = gaussian(0.5, 1)
        xi = np.array([[-1.5], [0.25], [2.0]])
        plain = fourier_at(f, xi)
        deriv = fourier_at(f.derivative((1,)), xi)
        np.testing.assert_allclose(
            deriv, 1j * xi[:, 0] * plain, atol=1e-10)

    def test_derivative_of_transform_matches_monomial_route(self):
        # D^alpha fhat computed under the integral must equal
        # (-i)^|alpha| times the transform of x^alpha f
        f = hermite_gaussian(2, 0.5)
        res = derivative_transform(f, (1,))
        xi = np.stack([res.axes[0]], axis=-1)
        alt = -1j * fourier_at(f.monomial_multiply((1,)), xi)
        np.testing.assert_allclose(res.values, alt, atol=1e-9)


class TestRoundtrip:
    def test_parseval(self):
        for f in (gaussian(0.5, 1), hermite_gaussian(2, 0.5)):
            assert abs(parseval_residual(f)) <= 1e-8

    def test_inverse_recovers_samples(self):
        f = hermite_gaussian(2, 0.5)
        res = fourier(f)
        xs = (np.linspace(-3.0, 3.0, 41),)
        back = inverse_fourier(res, xs)
        exact = np.array([f((x,)) for x in xs[0]])
        np.testing.assert_allclose(back.real, exact, atol=1e-8)
        np.testing.assert_allclose(back.imag, 0.0, atol=1e-8)

    def test_transform_axes_cover_default_spec(self):
        (ax,) = transform_axes(gaussian(0.5, 1))
        assert ax[0] < 0 < ax[-1]
        np.testing.assert_allclose(ax, -ax[::-1], atol=0)


class TestBounds:
    def test_theorem3_gaussian(self, t2_family, t2_table1):
        rep = verify_theorem3_bound(
            gaussian(0.5, 1), t2_family, 1, 0, table=t2_table1)
        assert rep.s_n == pytest.approx(2.0, rel=1e-15)
        assert rep.check.lhs <= rep.check.rhs + 1e-6
        assert rep.error_estimate <= 1e-8

    def test_pointwise_bound_small_sample(self, t2_family):
        rep = verify_pointwise_transform_bound(
            gaussian(0.5, 1), t2_family, 1,
            xs=[(0.5,), (1.5,)],
            alphas=[(0,), (1,)],
            betas=[(0,), (1,)])
        assert rep.min_margin >= -1e-6
        assert len(rep.checks) > 0
