"""Extended reals, multi-indices, and grid sampling / CSV round-trips."""
from __future__ import annotations

import math

import numpy as np
import pytest

from fenchellab.grid import (
    POS_INF,
    ExtendedReal,
    GridFunction,
    MultiIndex,
    multi_indices_of_order,
    multi_indices_up_to,
)


class TestExtendedReal:
    def test_finite_value_roundtrip(self):
        e = ExtendedReal(2.5)
        assert e.is_finite
        assert float(e) == 2.5
        assert e.value == 2.5

    def test_infinity_flags(self):
        assert not POS_INF.is_finite
        assert math.isinf(float(POS_INF))
        assert not ExtendedReal.infinity().is_finite
        assert not ExtendedReal(math.inf).is_finite

    def test_rejects_nan_and_negative_infinity(self):
        with pytest.raises(ValueError):
            ExtendedReal(math.nan)
        with pytest.raises(ValueError):
            ExtendedReal(-math.inf)

    def test_ordering(self):
        assert ExtendedReal(1.0) < ExtendedReal(2.0)
        assert ExtendedReal(1e300) < POS_INF
        assert not (POS_INF < POS_INF)

    def test_addition_absorbs_infinity(self):
        s = ExtendedReal(3.0) + POS_INF
        assert not s.is_finite
        t = ExtendedReal(1.5) + ExtendedReal(2.0)
        assert t.is_finite and float(t) == 3.5


class TestMultiIndex:
    def test_basic_attributes(self):
        mi = MultiIndex((2, 1))
        assert mi.parts == (2, 1)
        assert mi.dim == 2
        assert mi.order == 3
        assert mi.factorial == 2  # 2! * 1!

    def test_log_factorial_matches_lgamma(self):
        mi = MultiIndex((4, 3, 2))
        expect = sum(math.lgamma(k + 1) for k in (4, 3, 2))
        assert mi.log_factorial == pytest.approx(expect, abs=1e-12)

    def test_monomial(self):
        mi = MultiIndex((2, 1))
        assert mi.monomial((3.0, 5.0)) == pytest.approx(45.0)

    def test_of_order_enumeration(self):
        idx = multi_indices_of_order(2, 3)
        assert len(idx) == 4  # weak compositions of 3 into 2 parts
        assert all(m.order == 3 for m in idx)
        assert len(set(m.parts for m in idx)) == 4

    def test_up_to_enumeration(self):
        idx = multi_indices_up_to(2, 2)
        assert len(idx) == 6  # orders 0,1,2 -> 1+2+3
        assert {m.order for m in idx} == {0, 1, 2}

    def test_dim1_factorial_is_scalar_factorial(self):
        for k in range(10):
            assert MultiIndex((k,)).factorial == math.factorial(k)


class TestGridFunction:
    def test_from_callable_orders_axes_correctly(self):
        # anisotropic function so a transposed mesh would be caught
        xs = np.linspace(-1.0, 1.0, 5)
        ys = np.linspace(0.0, 2.0, 3)
        g = GridFunction.from_callable(lambda x, y: x + 10.0 * y, (xs, ys))
        assert g.dim == 2
        assert g.shape == (5, 3)
        assert g.values[4, 0] == pytest.approx(1.0)    # x=1, y=0
        assert g.values[0, 2] == pytest.approx(19.0)   # x=-1, y=2

    def test_node_returns_coordinates(self):
        xs = np.linspace(-1.0, 1.0, 5)
        g = GridFunction.from_callable(lambda x: x ** 2, (xs,))
        assert g.node((2,)) == (0.0,)
        assert g.node((4,)) == (1.0,)

    def test_finite_mask(self):
        xs = np.array([0.0, 1.0, 2.0])
        vals = np.array([1.0, np.inf, 3.0])
        g = GridFunction((xs,), vals)
        assert g.finite_mask.tolist() == [True, False, True]

    def test_csv_roundtrip_exact(self, tmp_path):
        xs = np.linspace(-2.0, 2.0, 7)
        ys = np.linspace(0.5, 1.5, 4)
        g = GridFunction.from_callable(
            lambda x, y: np.sin(x) * np.exp(y), (xs, ys))
        path = tmp_path / "grid.csv"
        g.to_csv(path)
        back = GridFunction.from_csv(path)
        assert back.dim == 2
        for a, b in zip(back.axes, g.axes):
            np.testing.assert_array_equal(a, b)
        np.testing.assert_array_equal(back.values, g.values)

    def test_csv_roundtrip_with_infinities(self, tmp_path):
        xs = np.array([0.0, 1.0, 2.0])
        g = GridFunction((xs,), np.array([0.5, np.inf, -1.25]))
        path = tmp_path / "inf.csv"
        g.to_csv(path)
        back = GridFunction.from_csv(path)
        np.testing.assert_array_equal(back.values, g.values)

    def test_csv_header_format(self, tmp_path):
        xs = np.linspace(0.0, 1.0, 3)
        g = GridFunction.from_callable(lambda x: x, (xs,))
        path = tmp_path / "header.csv"
        g.to_csv(path)
        first = path.read_text().splitlines()[0]
        assert first.startswith("# axes: 1; lens: 3")
