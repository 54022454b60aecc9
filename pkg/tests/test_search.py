"""Golden-section and concave-maximization behavior."""
from __future__ import annotations

import math

import numpy as np
import pytest

from fenchellab.search import (
    SearchConfig,
    SearchError,
    golden_section_max,
    maximize_concave,
)


class TestGoldenSection:
    def test_quadratic_argmax(self):
        x, v = golden_section_max(lambda x: -(x - 0.3) ** 2, -2.0, 2.0)
        assert x == pytest.approx(0.3, abs=1e-9)
        assert v == pytest.approx(0.0, abs=1e-18)

    def test_boundary_maximum(self):
        x, v = golden_section_max(lambda x: -x, 1.0, 3.0)
        assert x == pytest.approx(1.0, abs=1e-9)
        assert v == pytest.approx(-1.0, abs=1e-9)

    def test_terminates_on_large_magnitude_interval(self):
        # interval width below a float's ulp-resolvable fraction of the
        # endpoint magnitude: termination must not rely on (b - a) -> tol
        big = 1e15
        x, v = golden_section_max(lambda x: -(x - (big + 4.0)) ** 2,
                                  big, big + 10.0, tol=1e-11)
        assert abs(x - (big + 4.0)) <= 1.0
        assert v <= 0.0

    def test_rejects_inverted_interval(self):
        with pytest.raises(ValueError):
            golden_section_max(lambda x: -x * x, 1.0, -1.0)


class TestMaximizeConcave:
    def test_quadratic_2d(self):
        r = maximize_concave(
            lambda t: 5.0 - (t[0] - 1.0) ** 2 - (t[1] + 2.0) ** 2, 2)
        assert r.value == pytest.approx(5.0, abs=1e-12)
        assert r.point[0] == pytest.approx(1.0, abs=1e-6)
        assert r.point[1] == pytest.approx(-2.0, abs=1e-6)
        assert r.floored == (False, False)

    def test_argmax_outside_initial_box(self):
        r = maximize_concave(lambda t: -(t[0] - 37.0) ** 2, 1)
        assert r.point[0] == pytest.approx(37.0, abs=1e-6)
        assert r.doublings > 0

    def test_lower_bound_clamps_to_boundary(self):
        r = maximize_concave(lambda t: -(t[0] - 3.0) ** 2, 1, lower=(5.0,))
        assert r.point[0] == pytest.approx(5.0, abs=1e-9)
        assert r.value == pytest.approx(-4.0, abs=1e-9)

    def test_lower_bound_above_default_box(self):
        # regression: a bound past the initial half-width used to leave an
        # inverted bracket
        r = maximize_concave(lambda t: -(t[0] - 3.0) ** 2, 1,
                             lower=(5.0,), warm_start=(2.0,))
        assert r.point[0] == pytest.approx(5.0, abs=1e-9)

    def test_monotone_tail_is_floored(self):
        # sup over t of -4 e^{2t} is 0, approached as t -> -inf
        r = maximize_concave(lambda t: -4.0 * math.exp(2.0 * t[0]), 1)
        assert r.floored == (True,)
        assert r.value == pytest.approx(0.0, abs=1e-12)

    def test_unbounded_objective_raises(self):
        with pytest.raises(SearchError):
            maximize_concave(lambda t: float(t[0]), 1)

    def test_everywhere_minus_infinity_raises(self):
        with pytest.raises(SearchError):
            maximize_concave(lambda t: -math.inf, 1)

    def test_dim_validation(self):
        with pytest.raises(ValueError):
            maximize_concave(lambda t: 0.0, 0)
        with pytest.raises(ValueError):
            maximize_concave(lambda t: 0.0, 4)

    def test_lower_shape_validation(self):
        with pytest.raises(ValueError):
            maximize_concave(lambda t: -t[0] ** 2, 2, lower=(0.0,))

    def test_warm_start_matches_cold_start(self):
        fun = lambda t: -(t[0] - 2.0) ** 4
        cold = maximize_concave(fun, 1)
        warm = maximize_concave(fun, 1, warm_start=(1.9,))
        assert warm.point[0] == pytest.approx(cold.point[0], abs=1e-6)
        assert warm.value == pytest.approx(cold.value, abs=1e-12)

    def test_minus_infinity_marks_out_of_domain(self):
        def fun(t):
            if abs(t[0]) > 3.0:
                return -math.inf
            return -(t[0] - 1.0) ** 2

        r = maximize_concave(fun, 1)
        assert r.point[0] == pytest.approx(1.0, abs=1e-6)
        assert r.value == pytest.approx(0.0, abs=1e-12)
