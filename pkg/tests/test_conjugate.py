"""Discrete Young transform: closed forms, route agreement, involution."""
from __future__ import annotations

import numpy as np
import pytest

from fenchellab.conjugate import (
    biconjugate,
    brute_conjugate,
    conjugate_nd,
    fast_conjugate_1d,
)
from fenchellab.grid import GridFunction


def _dense_1d(fun, lo=-6.0, hi=6.0, n=1201):
    return GridFunction.from_callable(fun, (np.linspace(lo, hi, n),))


class TestClosedForms:
    def test_half_square_is_self_dual(self):
        f = _dense_1d(lambda x: 0.5 * x ** 2)
        duals = np.linspace(-3.0, 3.0, 13)
        vals = fast_conjugate_1d(f, duals)
        for v, y in zip(vals, duals):
            assert float(v) == pytest.approx(0.5 * y * y, abs=1e-12)

    def test_shifted_quadratic(self):
        # (a x^2 + b x + c)* = (y - b)^2 / (4a) - c at dual points where the
        # maximizer lands on a grid node
        a, b, c = 1.5, 0.75, -2.0
        xs = np.linspace(-8.0, 8.0, 3201)  # spacing 0.005
        f = GridFunction.from_callable(lambda x: a * x * x + b * x + c, (xs,))
        for y in (-1.5, 0.0, 0.75, 2.25):
            expect = (y - b) ** 2 / (4.0 * a) - c
            got = float(fast_conjugate_1d(f, [y])[0])
            assert got == pytest.approx(expect, abs=1e-5)

    def test_absolute_value_conjugate_vanishes_inside_unit_ball(self):
        f = _dense_1d(lambda x: np.abs(x), lo=-2.0, hi=2.0, n=801)
        for y in (-1.0, -0.5, 0.0, 0.5, 1.0):
            assert float(fast_conjugate_1d(f, [y])[0]) == pytest.approx(0.0, abs=1e-12)


class TestRouteAgreement:
    def test_fast_matches_brute_on_random_convex_samples(self, rng):
        xs = np.linspace(-4.0, 4.0, 401)
        duals = np.linspace(-5.0, 5.0, 21)
        for _ in range(20):
            a = rng.uniform(0.2, 2.0)
            b = rng.uniform(0.0, 0.5)
            c = rng.uniform(-1.0, 1.0)
            f = GridFunction.from_callable(
                lambda x: a * (x - c) ** 2 + b * x ** 4, (xs,))
            fast = fast_conjugate_1d(f, duals)
            brute = brute_conjugate(f, duals)
            for u, v in zip(fast, brute):
                assert float(u) == pytest.approx(float(v), abs=1e-12)

    def test_nd_matches_brute_in_2d(self, rng):
        axes = (np.linspace(-2.0, 2.0, 41), np.linspace(-2.0, 2.0, 41))
        f = GridFunction.from_callable(
            lambda x, y: x * x + 0.5 * y * y + 0.25 * x * y, axes)
        dual_axes = (np.linspace(-1.5, 1.5, 5), np.linspace(-1.5, 1.5, 5))
        g = conjugate_nd(f, dual_axes)
        mesh = np.meshgrid(*dual_axes, indexing="ij")
        pts = np.stack([m.ravel() for m in mesh], axis=-1)
        brute = brute_conjugate(f, pts)
        np.testing.assert_allclose(
            g.values.ravel(), [float(v) for v in brute], atol=1e-12)

    def test_nd_1d_agrees_with_fast(self):
        f = _dense_1d(lambda x: np.cosh(x) - 1.0)
        duals = np.linspace(-2.0, 2.0, 9)
        g = conjugate_nd(f, (duals,))
        fast = fast_conjugate_1d(f, duals)
        np.testing.assert_allclose(
            g.values, [float(v) for v in fast], atol=1e-14)


class TestTransformProperties:
    def test_order_reversal(self):
        # f <= g pointwise implies f* >= g* pointwise
        f = _dense_1d(lambda x: 0.5 * x ** 2)
        g = _dense_1d(lambda x: 0.5 * x ** 2 + 0.3 + 0.1 * np.sin(x))
        duals = np.linspace(-2.0, 2.0, 17)
        fstar = [float(v) for v in fast_conjugate_1d(f, duals)]
        gstar = [float(v) for v in fast_conjugate_1d(g, duals)]
        assert all(u >= v - 1e-14 for u, v in zip(fstar, gstar))

    def test_biconjugate_below_function(self):
        f = _dense_1d(lambda x: x ** 4 - x ** 2, lo=-2.0, hi=2.0, n=401)
        b = biconjugate(f)
        assert np.all(b.values <= f.values + 1e-12)

    def test_biconjugate_fixes_convex_function(self):
        # agreement is limited by the O(h^2) dual-lattice interpolation
        # error; the convergence rate itself is pinned elsewhere via
        # mesh-halving ratios
        f = _dense_1d(lambda x: np.cosh(x) - 1.0, lo=-3.0, hi=3.0, n=601)
        b = biconjugate(f)
        inner = slice(150, 451)  # interior, unaffected by domain truncation
        np.testing.assert_allclose(
            b.values[inner], f.values[inner], atol=1e-4)

    def test_biconjugate_is_convex_envelope(self):
        # concave bump: greatest convex minorant on [-1, 1] is the constant -1
        f = _dense_1d(lambda x: -np.abs(x), lo=-1.0, hi=1.0, n=201)
        b = biconjugate(f)
        np.testing.assert_allclose(b.values, -1.0, atol=1e-12)

    def test_affine_shift_rule(self):
        # (f + c)* = f* - c
        f = _dense_1d(lambda x: 0.5 * x ** 2)
        g = _dense_1d(lambda x: 0.5 * x ** 2 + 3.25)
        duals = np.linspace(-2.0, 2.0, 9)
        fstar = [float(v) for v in fast_conjugate_1d(f, duals)]
        gstar = [float(v) for v in fast_conjugate_1d(g, duals)]
        np.testing.assert_allclose(
            np.array(fstar) - np.array(gstar), 3.25, atol=1e-12)


class TestValidation:
    def test_fast_requires_1d(self):
        axes = (np.linspace(-1, 1, 5), np.linspace(-1, 1, 5))
        f2 = GridFunction.from_callable(lambda x, y: x * x + y * y, axes)
        with pytest.raises(ValueError):
            fast_conjugate_1d(f2, [0.0])

    def test_nd_checks_dual_axes_count(self):
        axes = (np.linspace(-1, 1, 5), np.linspace(-1, 1, 5))
        f2 = GridFunction.from_callable(lambda x, y: x * x + y * y, axes)
        with pytest.raises(ValueError):
            conjugate_nd(f2, (np.linspace(-1, 1, 3),))
