"""Seminorm families, Taylor extension, and the growth sandwich."""
from __future__ import annotations

import math

import numpy as np
import pytest

from fenchellab.seminorms import (
    conjugate_weight,
    default_lattice_bound,
    default_real_axes,
    derivative_factorial_decay,
    g_seminorm,
    hspace_sandwich,
    lattice_subadditivity,
    p_seminorm,
    q_seminorm,
    rho_seminorm,
    stirling_binomial_check,
    taylor_extend,
    verify_theorem4_equivalence,
)
from fenchellab.testfunctions import gaussian, hermite_gaussian
from fenchellab.weights import estimate_condition_constant


class TestGoldenValues:
    """exp(-x^2/2) normalizes every seminorm to its value at the origin."""

    def test_p_seminorm(self, t2_family):
        rep = p_seminorm(gaussian(0.5, 1), t2_family.member(1), 0)
        assert rep.value == pytest.approx(1.0, abs=1e-10)

    def test_rho_seminorm(self, t2_table1):
        rep = rho_seminorm(gaussian(0.5, 1), t2_table1, 0)
        assert rep.value == pytest.approx(1.0, abs=1e-10)

    def test_g_seminorm(self, t2_table1):
        rep = g_seminorm(gaussian(0.5, 1), t2_table1, 0)
        assert rep.value == pytest.approx(1.0, abs=1e-10)
        assert rep.stabilized

    def test_q_seminorm(self, t2_family):
        axes = default_real_axes(1)
        cw = conjugate_weight(t2_family.member(1), axes)
        rep = q_seminorm(gaussian(0.5, 1), cw, 0)
        assert rep.value == pytest.approx(1.0, abs=1e-10)


class TestSeminormProperties:
    def test_monotone_in_polynomial_order(self, t2_family, t2_table1):
        f = hermite_gaussian(2, 0.5)
        p0 = p_seminorm(f, t2_family.member(1), 0).value
        p2 = p_seminorm(f, t2_family.member(1), 2).value
        assert p2 >= p0
        r0 = rho_seminorm(f, t2_table1, 0).value
        r2 = rho_seminorm(f, t2_table1, 2).value
        assert r2 >= r0

    def test_absolute_homogeneity(self, t2_family, t2_table1):
        f = hermite_gaussian(2, 0.5)
        for one, of in ((p_seminorm(f, t2_family.member(1), 1).value,
                         p_seminorm(f * 2.5, t2_family.member(1), 1).value),
                        (rho_seminorm(f, t2_table1, 1).value,
                         rho_seminorm(f * 2.5, t2_table1, 1).value)):
            assert of == pytest.approx(2.5 * one, rel=1e-10)

    def test_default_lattice_bounds(self):
        assert default_lattice_bound(1) == 30
        assert default_lattice_bound(2) == 14

    def test_default_axes_are_symmetric(self):
        (ax,) = default_real_axes(1)
        np.testing.assert_allclose(ax, -ax[::-1], atol=0)


class TestTaylorExtension:
    def test_small_displacement_is_machine_exact(self):
        f = hermite_gaussian(2, 0.5)
        rep = taylor_extend(f, np.array([0.3]), np.array([0.05 + 0.05j]))
        exact = f((complex(0.3 + 0.05 + 0.05j),))
        assert abs(rep.value - exact) <= 1e-12
        assert rep.decayed

    def test_radius_two_within_budget(self):
        f = gaussian(0.5, 1)
        rep = taylor_extend(f, np.array([0.5]), np.array([1.2 + 1.6j]))
        exact = f((complex(0.5 + 1.2 + 1.6j),))
        assert abs(rep.value - exact) <= 1e-8
        assert rep.order <= 30

    def test_error_estimate_is_honest(self):
        f = gaussian(0.5, 1)
        rep = taylor_extend(f, np.array([0.0]), np.array([1.0 + 1.0j]),
                            order=10)
        exact = f((complex(1.0 + 1.0j),))
        assert abs(rep.value - exact) <= 10.0 * max(rep.error_estimate, 1e-15)

    def test_2d_extension(self):
        from fenchellab.testfunctions import product
        f = product(gaussian(0.5, 1), gaussian(0.5, 1))
        x = np.array([0.2, -0.4])
        y = np.array([0.5 + 0.8j, -0.3 + 0.6j])
        rep = taylor_extend(f, x, y)
        exact = f(tuple(complex(a + b) for a, b in zip(x, y)))
        assert abs(rep.value - exact) <= 1e-8


class TestDerivativeDecay:
    def test_gaussian_constant_is_two(self):
        rep = derivative_factorial_decay(gaussian(0.5, 1), 0.5)
        assert rep.decayed
        assert rep.constant == pytest.approx(2.0, abs=1e-9)

    def test_shell_maxima_eventually_fall(self):
        rep = derivative_factorial_decay(hermite_gaussian(2, 0.5), 0.5)
        assert rep.decayed
        assert rep.shell_maxima[-1] < max(rep.shell_maxima)


class TestCombinatorialBounds:
    def test_stirling_binomial_exact_to_sixty(self):
        ok, min_margin, witness = stirling_binomial_check(60)
        assert ok
        assert min_margin >= 0.0

    def test_lattice_subadditivity(self, t2_family, t2_table2, t2_table3):
        l_hat = estimate_condition_constant(t2_family, "i4", 2).value
        check = lattice_subadditivity(t2_table2, t2_table3, l_hat)
        assert check.min_margin >= -1e-8
        assert check.l_hat == l_hat


class TestSandwich:
    def test_values_follow_closed_form(self, t2_family):
        checks = hspace_sandwich(t2_family, 1, (0.5, 2.0, 10.0))
        for c in checks:
            assert c.lower <= c.value <= c.upper
            assert c.value == pytest.approx(
                4.0 * (1.0 + c.t[0]) ** 2, rel=1e-9)


class TestEquivalence:
    def test_direct_bound_and_reverse_ratio(self, t2_family, t2_table1):
        rep = verify_theorem4_equivalence(
            gaussian(0.5, 1), t2_family, 1, 0, table=t2_table1)
        assert rep.direct.lhs <= rep.direct.rhs + 1e-6
        assert math.isfinite(rep.reverse_ratio)
        assert rep.reverse_ratio > 0.0
