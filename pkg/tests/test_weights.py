"""Weight families, admissibility conditions, and mollification."""
from __future__ import annotations

import math

import numpy as np
import pytest

from fenchellab import log_linear_constant
from fenchellab.mollify import bump_mollifier, mollify, verify_mollify_chain
from fenchellab.weights import (
    WeightFunction,
    check_class_A,
    estimate_condition_constant,
    family_from_json,
    family_to_json,
)


class TestFamilyConstruction:
    def test_unknown_profile_rejected(self):
        with pytest.raises(ValueError, match="unknown profile"):
            family_from_json({"profile": "cubic", "base": 2.0, "dim": 1})

    def test_base_below_two_rejected(self):
        with pytest.raises(ValueError, match="base"):
            family_from_json({"profile": "t^2", "base": 1.0, "dim": 1})

    def test_json_string_roundtrip(self, t2_family):
        clone = family_from_json(family_to_json(t2_family))
        for nu in (1, 2, 3):
            for x in (0.25, 1.0, 3.0):
                a = float(np.asarray(t2_family.member(nu)((x,))).ravel()[0])
                b = float(np.asarray(clone.member(nu)((x,))).ravel()[0])
                assert a == b

    def test_members_are_cached(self, t2_family):
        assert t2_family.member(2) is t2_family.member(2)

    def test_member_values_scale_with_base(self, t2_family):
        # member nu of the radial t^2 family at base 2 is (2^nu |x|)^2
        for nu in (1, 2, 3):
            for x in (0.5, 1.0, 2.0):
                v = float(np.asarray(t2_family.member(nu)((x,))).ravel()[0])
                assert v == pytest.approx((2.0 ** nu * x) ** 2, rel=1e-14)

    def test_doubling_argument_equals_next_member(self, t2_family, exp_family):
        # g_nu(2x) and g_{nu+1}(x) are the same expression for base 2, so
        # the gap must be exactly zero, not merely small
        xs = np.linspace(0.0, 80.0, 401)
        for fam in (t2_family, exp_family):
            lo = np.asarray([float(np.asarray(fam.member(1)((2.0 * x,))).ravel()[0])
                             for x in xs])
            hi = np.asarray([float(np.asarray(fam.member(2)((x,))).ravel()[0])
                             for x in xs])
            np.testing.assert_array_equal(lo, hi)


class TestClassA:
    def test_family_members_qualify(self, t2_family, exp_family):
        for fam in (t2_family, exp_family):
            rep = check_class_A(fam.member(1))
            assert rep.passed
            assert rep.symmetric and rep.monotone and rep.superlinear_trend

    def test_asymmetric_weight_fails(self):
        w = WeightFunction(
            lambda x: np.asarray(x)[..., 0] ** 2 + np.asarray(x)[..., 0],
            1, name="asym")
        rep = check_class_A(w)
        assert not rep.passed
        assert not rep.symmetric

    def test_linear_growth_fails_superlinearity(self):
        w = WeightFunction(
            lambda x: np.abs(np.asarray(x)[..., 0]), 1, name="abs")
        rep = check_class_A(w)
        assert not rep.passed
        assert not rep.superlinear_trend
        assert rep.symmetric and rep.monotone


class TestConditionConstants:
    def test_i0_requires_parameter(self, t2_family):
        with pytest.raises(ValueError, match="A"):
            estimate_condition_constant(t2_family, "i0", 1)

    def test_only_i0_takes_parameter(self, t2_family):
        with pytest.raises(ValueError, match="takes no A"):
            estimate_condition_constant(t2_family, "i2", 1, A=1.0)

    def test_unknown_condition(self, t2_family):
        with pytest.raises(ValueError, match="unknown condition"):
            estimate_condition_constant(t2_family, "i9", 1)

    def test_t2_constants_bounded_under_doubling(self, t2_family):
        for cond in ("i0", "i2", "i3", "i4"):
            kwargs = {"A": 1.0} if cond == "i0" else {}
            est = estimate_condition_constant(t2_family, cond, 1, **kwargs)
            assert not est.unbounded
            assert len(est.doubling_values) >= 2
            assert math.isfinite(est.value)

    def test_estimate_records_inputs(self, t2_family):
        est = estimate_condition_constant(t2_family, "i0", 1, A=1.0)
        assert est.condition == "i0"
        assert est.nu == 1
        assert est.param == {"A": 1.0}


class TestLogLinearConstant:
    def test_closed_form_A2(self, t2_family):
        # sup_t (2t - 12 e^{2t}) = -1 - ln 12
        assert log_linear_constant(t2_family, 1, 2.0) == pytest.approx(
            -1.0 - math.log(12.0), abs=1e-12)

    def test_closed_form_A1(self, t2_family):
        # sup_t (t - 12 e^{2t}) = -(1 + ln 24) / 2
        assert log_linear_constant(t2_family, 1, 1.0) == pytest.approx(
            -(1.0 + math.log(24.0)) / 2.0, abs=1e-12)


class TestMollify:
    def test_kernel_has_unit_mass(self):
        k = bump_mollifier(1)
        xs = np.linspace(-1.0, 1.0, 4001)
        vals = np.array([np.asarray(k(np.array([x]))).ravel()[0] for x in xs])
        assert np.trapezoid(vals, xs) == pytest.approx(1.0, abs=1e-6)

    def test_kernel_support(self):
        k = bump_mollifier(1, support=0.5)
        assert k.support == 0.5
        assert np.asarray(k(np.array([0.75]))).ravel()[0] == 0.0

    def test_smooths_and_dominates_convex_weight(self):
        w = WeightFunction(lambda x: np.asarray(x)[..., 0] ** 2, 1,
                           name="sq", convex=True)
        mw = mollify(w)
        assert mw.smoothness == "C^inf"
        for x in (-2.0, -0.3, 0.0, 1.1, 3.7):
            raw = float(np.asarray(w((x,))).ravel()[0])
            smooth = float(np.asarray(mw((x,))).ravel()[0])
            assert smooth >= raw - 1e-12

    def test_low_order_quadrature_rejected_on_kink(self, exp_family):
        with pytest.raises(ValueError, match="too low"):
            mollify(exp_family.member(1), order=8)

    def test_chain_report_on_t2(self, t2_family):
        rep = verify_mollify_chain(t2_family, nus=(1,), radius=4.0, points=60)
        dom = rep.domination[0]
        assert dom.passed
        assert dom.min_gap >= -1e-8
        shift = rep.shift[0]
        assert shift.bound is not None
        assert shift.estimate <= shift.bound
        assert not shift.unbounded
        assert not rep.log_gap[0].unbounded
        assert set(rep.subfamily) == {"i0", "i2", "i3"}
        assert all(not est.unbounded for est in rep.subfamily.values())
