"""Log-substituted lattice conjugates, duality gaps, and shell series.

Closed-form oracle used throughout: for the first t^2-profile member
``g(x) = 4 x^2`` the substitution gives ``psi(t) = 4 e^{2t}`` and

    psi*(xi) = sup_t (xi t - 4 e^{2t}) = (xi / 2) (ln(xi / 8) - 1),  xi > 0,

with ``psi*(0) = 0`` approached along ``t -> -inf``.  The plain Young
conjugate of the same member is ``(4 x^2)*(s) = s^2 / 16``.
"""
from __future__ import annotations

import math

import numpy as np
import pytest

from fenchellab.logconj import (
    SeparableWeight,
    discrete_log_conjugate,
    duality_gap,
    lattice_conjugate_table,
    log_substitute,
    pointwise_conjugate,
    series_partial_sums,
)


def psi1_star(xi: float) -> float:
    return 0.5 * xi * (math.log(xi / 8.0) - 1.0)


class TestLatticeConjugate:
    def test_closed_form_on_lattice(self, t2_table1):
        for xi in (1, 2, 3, 8, 20, 50):
            assert t2_table1.value((xi,)) == pytest.approx(
                psi1_star(float(xi)), abs=1e-10)

    def test_origin_value_is_floored_zero(self, t2_table1):
        assert t2_table1.value((0,)) == pytest.approx(0.0, abs=1e-12)

    def test_negative_coordinate_is_infinite(self, t2_family):
        v = discrete_log_conjugate(t2_family.member(1), (-1,))
        assert not v.is_finite

    def test_value_outside_bound_raises(self, t2_table1):
        with pytest.raises(KeyError):
            t2_table1.value((t2_table1.bound + 1,))

    def test_shell_enumeration(self, t2_table1):
        shell = t2_table1.shell(2)
        assert len(shell) == 1
        alpha, val = shell[0]
        assert alpha == (2,)
        assert val == pytest.approx(psi1_star(2.0), abs=1e-10)

    def test_growth_flag(self, t2_table1):
        assert t2_table1.growth_ok

    def test_2d_table_is_coordinate_sum(self, t2_table1):
        from conftest import make_family

        table2 = lattice_conjugate_table(make_family("t^2", dim=2).member(1), 4)
        for a in range(5):
            for b in range(5 - a):
                expect = t2_table1.value((a,)) + t2_table1.value((b,))
                assert table2.value((a, b)) == pytest.approx(expect, abs=1e-9)

    def test_log_substitute(self, t2_family):
        m1 = t2_family.member(1)
        for t in (-1.0, 0.0, 1.0, 2.5):
            assert log_substitute(m1, t) == pytest.approx(
                4.0 * math.exp(2.0 * t), rel=1e-14)


class TestPointwiseConjugate:
    def test_quadratic_closed_form(self, t2_family):
        m1 = t2_family.member(1)
        for s in (-3.0, -0.5, 0.0, 1.0, 4.0):
            assert pointwise_conjugate(m1, (s,)) == pytest.approx(
                s * s / 16.0, abs=1e-12)

    def test_warm_start_agrees(self, t2_family):
        m1 = t2_family.member(1)
        cold = pointwise_conjugate(m1, (2.0,))
        warm = pointwise_conjugate(m1, (2.0,), warm_start=(0.1,))
        assert warm == pytest.approx(cold, abs=1e-12)


class TestDualityGap:
    def test_smooth_profiles_close_the_gap(self):
        profiles = (lambda x: x * x,
                    lambda x: x ** 4,
                    lambda x: math.cosh(x) - 1.0)
        for u in profiles:
            for x in (0.3, 1.0, 2.5):
                assert abs(duality_gap(u, (x,))) <= 1e-6

    def test_origin_gap_is_exact(self):
        assert abs(duality_gap(lambda x: x * x, (0.0,))) <= 1e-12

    def test_separable_gap_decomposes(self):
        parts = (lambda x: x * x, lambda x: x ** 4)
        sw = SeparableWeight(parts)
        whole = duality_gap(sw, (1.3, 0.7))
        split = duality_gap(parts[0], (1.3,)) + duality_gap(parts[1], (0.7,))
        assert whole == pytest.approx(split, abs=1e-14)

    def test_nonsmooth_weight_stays_one_sided(self):
        u = lambda x: max(x * x, 2.0 * abs(x) - 0.5)
        gap = duality_gap(u, (1.0,))
        assert gap <= 1e-6

    def test_separable_weight_validation(self):
        with pytest.raises(ValueError):
            SeparableWeight([])
        with pytest.raises(ValueError):
            SeparableWeight([lambda x: x * x] * 4)
        sw = SeparableWeight([lambda x: x * x] * 2)
        with pytest.raises(ValueError):
            sw((1.0,))


class TestShellSeries:
    def test_converges_and_is_monotone(self, t2_family, t2_table1):
        rep = series_partial_sums(t2_family.member(1), 1.0, table=t2_table1)
        assert rep.converged
        assert not rep.diverging
        assert all(inc >= 0.0 for inc in rep.shell_increments)
        sums = rep.partial_sums
        assert all(b >= a for a, b in zip(sums, sums[1:]))
        assert rep.total == sums[-1]

    def test_larger_base_shrinks_every_shell(self, t2_family, t2_table1):
        small = series_partial_sums(t2_family.member(1), 1.0, table=t2_table1)
        large = series_partial_sums(t2_family.member(1), 10.0, table=t2_table1)
        for s, l in list(zip(small.shell_increments,
                             large.shell_increments))[1:]:
            assert l <= s
        assert large.total <= small.total

    def test_modes_coincide_in_one_dimension(self, t2_family, t2_table1):
        fac = series_partial_sums(t2_family.member(1), 2.0,
                                  mode="factorial", table=t2_table1)
        mod = series_partial_sums(t2_family.member(1), 2.0,
                                  mode="modulus-factorial", table=t2_table1)
        assert fac.total == pytest.approx(mod.total, rel=1e-14)

    def test_validation(self, t2_family, t2_table1):
        m1 = t2_family.member(1)
        with pytest.raises(ValueError):
            series_partial_sums(m1, 0.0, table=t2_table1)
        with pytest.raises(ValueError):
            series_partial_sums(m1, 1.0, mode="harmonic", table=t2_table1)
        with pytest.raises(ValueError):
            series_partial_sums(m1, 1.0, terms=0, table=t2_table1)
        with pytest.raises(ValueError):
            series_partial_sums(m1, 1.0, terms=t2_table1.bound + 1,
                                table=t2_table1)
