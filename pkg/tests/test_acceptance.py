"""Acceptance gate: the thirteen headline criteria.

Each test prints one ``[PASS]``/``[FAIL]`` line on the real stdout (so the
verdicts survive pytest capture) and then asserts.  Pipelines are run once
per module through timed fixtures; criteria that pin their own sampling
(criteria 1 sample counts, criterion 9 Taylor draws, criterion 12) verify
directly against the library instead of trusting pipeline bookkeeping.
"""
from __future__ import annotations

import math
import subprocess
import sys
import time
from pathlib import Path

import numpy as np
import pytest

from fenchellab.seminorms import stirling_binomial_check, taylor_extend
from fenchellab.fourier import surface_constant
from fenchellab.suite import (
    _complex_ball_points,
    builtin_test_functions,
    run_conjugate,
    run_duality,
    run_embedding,
    run_family_check,
    run_fourier,
    run_seminorm,
)

SEED = 42


def verdict(num: int, ok: bool, text: str) -> bool:
    flag = "PASS" if ok else "FAIL"
    print(f"[{flag}] criterion {num:02d} — {text}",
          file=sys.__stdout__, flush=True)
    return ok


def by_id(result):
    return {r.check_id: r for r in result.records}


def timed(fn, *args, **kwargs):
    t0 = time.perf_counter()
    out = fn(*args, **kwargs)
    return out, time.perf_counter() - t0


@pytest.fixture(scope="module")
def conjugate_run():
    return timed(run_conjugate, seed=SEED)


@pytest.fixture(scope="module")
def duality_run():
    return timed(run_duality, seed=SEED)


@pytest.fixture(scope="module")
def family_t2():
    return run_family_check("t^2", seed=SEED)


@pytest.fixture(scope="module")
def family_exp():
    return run_family_check("exp(t)-1", seed=SEED)


@pytest.fixture(scope="module")
def seminorm_run():
    return run_seminorm(seed=SEED)


@pytest.fixture(scope="module")
def embedding_run():
    return run_embedding(seed=SEED)


@pytest.fixture(scope="module")
def fourier_run():
    return run_fourier(seed=SEED)


@pytest.fixture(scope="module")
def fullsuite_cli(tmp_path_factory):
    base = tmp_path_factory.mktemp("fullsuite")
    runs = []
    for tag in ("one", "two"):
        out = base / tag
        argv = [sys.executable, "-m", "fenchellab.cli", "full-suite",
                "--seed", str(SEED), "--no-timestamp", "--out", str(out)]
        t0 = time.perf_counter()
        proc = subprocess.run(argv, capture_output=True, text=True)
        runs.append((out, proc, time.perf_counter() - t0))
    return runs


def test_criterion_01_dual_route_agreement(conjugate_run):
    result, elapsed = conjugate_run
    rec = by_id(result)
    routes = ("conjugate.fast-vs-brute.n1",
              "conjugate.nd-vs-brute.n1",
              "conjugate.nd-vs-brute.n2")
    worst = max(rec[i].constants["worst_deviation"] for i in routes)
    ok = all(rec[i].passed and rec[i].margin >= 0.0 for i in routes)
    ok = ok and elapsed < 10.0
    assert verdict(
        1, ok,
        "fast_conjugate_1d and conjugate_nd match brute_conjugate within "
        f"1e-10 on 200 convex samples, n in {{1,2}} (worst {worst:.1e}, "
        f"{elapsed:.1f}s < 10s)")


def test_criterion_02_biconjugate_mesh_halving(conjugate_run):
    result, _ = conjugate_run
    rec = by_id(result)
    ratios = []
    ok = True
    for rid in ("conjugate.involutivity.n1", "conjugate.involutivity.n2"):
        r = rec[rid].constants["error_ratios"]
        ok = ok and rec[rid].passed and len(r) == 2 and min(r) >= 1.5
        ratios.extend(r)
    assert verdict(
        2, ok,
        "biconjugate error contracts under mesh halving across three "
        f"levels, n=1 and n=2 (ratios {min(ratios):.2f}..{max(ratios):.2f}, "
        "required >= 1.5)")


def test_criterion_03_duality_gap_sweep(duality_run):
    result, elapsed = duality_run
    identity = [r for r in result.records if ".identity." in r.check_id]
    origin = [r for r in result.records if ".origin." in r.check_id]
    ok = (len(identity) == 120          # 3 profiles x 2 dims x 20 points
          and all(r.passed and r.margin >= 0.0 for r in identity)
          and len(origin) == 6
          and all(r.passed for r in origin)
          and elapsed < 60.0)
    worst = min(r.margin for r in identity)
    assert verdict(
        3, ok,
        "|duality gap| <= 1e-6 for x^2, x^4, sum cosh-n at 20 random "
        f"points each, n in {{1,2}}, plus exact x=0 (worst margin "
        f"{worst:.1e}, {elapsed:.1f}s < 60s)")


def test_criterion_04_lattice_lemma_suites(family_t2, family_exp):
    lemma_ids = ("lemma1.M0p5", "lemma1.M1p0", "lemma1.M3p0",
                 "lemma2", "lemma3", "lemma5", "lemma6")
    ok = True
    worst_lemma, worst_c2 = math.inf, math.inf
    for result, fid in ((family_t2, "t2"), (family_exp, "exp")):
        rec = by_id(result)
        for short in lemma_ids:
            r = rec[f"family.{fid}.{short}"]
            ok = ok and r.passed and r.margin >= -1e-8
            worst_lemma = min(worst_lemma, r.margin)
        c2 = rec[f"family.{fid}.corollary2"]
        ok = ok and c2.passed and c2.margin >= -1e-6
        worst_c2 = min(worst_c2, c2.margin)
    assert verdict(
        4, ok,
        "Lemma 1/2/3/5/6 margins >= -1e-8 and Corollary 2 margin >= -1e-6 "
        f"for both families (worst lemma {worst_lemma:.1e}, worst "
        f"Corollary 2 {worst_c2:.1e})")


def test_criterion_05_shell_series_stabilize(family_t2):
    rec = by_id(family_t2)
    ids = [f"family.t2.corollary1.{mode}.b{b}"
           for mode in ("factorial", "modulus-factorial")
           for b in ("0p5", "1p0", "10p0")]
    ok = all(rec[i].passed and rec[i].margin >= 0.0 for i in ids)
    assert verdict(
        5, ok,
        "shell series for the t^2 profile stabilize to 1e-12 within 50 "
        "shells for b in {0.5, 1, 10}, both weighting modes")


def test_criterion_06_t2_conditions(family_t2):
    rec = by_id(family_t2)
    i1 = rec["family.t2.i1-exact"]
    ok = (i1.passed and i1.margin >= 0.0
          and i1.witness["sigma"] == 2.0 and i1.witness["gamma"] == 0.0)
    for cond in ("i0", "i2", "i3", "i4"):
        ok = ok and rec[f"family.t2.{cond}"].passed
    assert verdict(
        6, ok,
        "t^2 family: i1 exact with sigma=2, gamma=0 (pointwise <= 1e-12); "
        "i0/i2/i3/i4 constants stay bounded under domain doubling")


def test_criterion_07_mollifier_chain(family_t2):
    rec = by_id(family_t2)
    ids = ["family.t2.mollify.ineq18.x2", "family.t2.mollify.ineq18.x4"]
    ids += [f"family.t2.mollify.domination.nu{nu}" for nu in (1, 2)]
    ids += [f"family.t2.mollify.ineq{k}.nu{nu}"
            for k in (19, 20, 21, 22) for nu in (1, 2)]
    ids += [f"family.t2.mollify.subfamily.{c}" for c in ("i0", "i2", "i3")]
    ok = all(rec[i].passed for i in ids)
    assert verdict(
        7, ok,
        "mollifier domination holds at 100 random points for x^2 and x^4, "
        "and the smoothed-chain constants stay bounded under domain "
        "doubling")


def test_criterion_08_embedding_chain(embedding_run):
    rec = by_id(embedding_run)
    ok = True
    worst = math.inf
    for name in ("gaussian-1d", "hermite2-1d"):
        for m in (0, 1, 2):
            for short in ("ineq1", "ineq7"):
                r = rec[f"embedding.{short}.{name}.m{m}"]
                ok = ok and r.passed and r.margin >= -1e-6
                worst = min(worst, r.margin)
    assert verdict(
        8, ok,
        "embedding chain inequalities hold with margin >= -1e-6 for the "
        f"gaussian and hermite samples, m in {{0,1,2}} (worst {worst:.1e})")


def test_criterion_09_taylor_extension():
    rng = np.random.default_rng([SEED, 9])
    ok = True
    worst = 0.0
    max_order = 0
    for _, f in builtin_test_functions():
        x = rng.uniform(-1.0, 1.0, size=f.dim)
        for y in _complex_ball_points(rng, f.dim, 5):
            rep = taylor_extend(f, x, y)
            exact = f(x + y if f.dim > 1 else complex(x[0] + y[0]))
            dev = abs(rep.value - exact)
            worst = max(worst, dev)
            max_order = max(max_order, rep.order)
            ok = ok and dev <= 1e-8 and rep.order <= 30
    assert verdict(
        9, ok,
        "taylor_extend matches exact complex evaluation within 1e-8 for "
        f"|y| <= 2 on every built-in (worst {worst:.1e}, max order "
        f"{max_order} <= 30)")


def test_criterion_10_transform_bounds(fourier_run):
    rec = by_id(fourier_run)
    names = [n for n, _ in builtin_test_functions()]
    ok = (rec["fourier.self-duality"].passed
          and rec["fourier.self-duality"].margin >= 0.0
          and rec["fourier.surface-constants"].passed
          and surface_constant(1).s_n == 2.0
          and surface_constant(2).s_n == 2.0 * math.pi)
    for n in names:
        ok = ok and rec[f"fourier.parseval.{n}"].passed
        ok = ok and rec[f"fourier.roundtrip.{n}"].passed
    t3 = ("fourier.theorem3.gaussian-1d.m0", "fourier.theorem3.gaussian-1d.m1",
          "fourier.theorem3.hermite2-1d.m0", "fourier.theorem3.hermite2-1d.m1",
          "fourier.theorem3.gaussian-2d.m0")
    for i in t3:
        ok = ok and rec[i].passed and rec[i].margin >= -1e-6
    assert verdict(
        10, ok,
        "gaussian self-duality to 1e-10, Parseval and roundtrip to 1e-8 on "
        "all built-ins, and the surface-measure transform bound holds for "
        "n=1 (s_1=2) and n=2 (s_2=2*pi)")


def test_criterion_11_moment_equivalence(embedding_run):
    rec = by_id(embedding_run)
    ok = True
    ratios = []
    for name in ("gaussian-1d", "hermite2-1d"):
        for m in (0, 1, 2):
            r = rec[f"embedding.theorem4.{name}.m{m}"]
            ratio = r.constants["reverse_ratio"]
            ok = (ok and r.passed and r.margin >= -1e-6
                  and math.isfinite(ratio) and ratio > 0.0)
            ratios.append(ratio)
    assert verdict(
        11, ok,
        "moment-norm bound holds within 1e-6 in the direct direction; "
        f"reverse direction reported as ratios {min(ratios):.2f}.."
        f"{max(ratios):.2f} only")


def test_criterion_12_stirling_binomial():
    ok_flag, min_margin, witness = stirling_binomial_check(20)
    ok = ok_flag and min_margin >= 0.0
    assert verdict(
        12, ok,
        "Stirling-based binomial bound is exact (no tolerance) for all "
        f"m1, m2 <= 20 (min margin {min_margin:.3e} at {witness})")


def test_criterion_13_cli_determinism(fullsuite_cli):
    (out1, proc1, t1), (out2, proc2, t2) = fullsuite_cli
    ok = proc1.returncode == 0 and proc2.returncode == 0
    files1 = sorted(p.name for p in out1.iterdir())
    files2 = sorted(p.name for p in out2.iterdir())
    ok = ok and files1 == files2 and "report.json" in files1
    for name in files1:
        ok = ok and (out1 / name).read_bytes() == (out2 / name).read_bytes()
    ok = ok and max(t1, t2) < 600.0
    assert verdict(
        13, ok,
        "two full-suite runs with --seed 42 --no-timestamp are "
        f"byte-identical across report.json and every CSV "
        f"({len(files1)} files, {max(t1, t2):.0f}s < 600s)")
