"""Deterministic maximization of concave (or unimodal) objectives on R^n.

The toolkit needs many small continuous suprema: log-domain conjugates,
pointwise convex conjugates, and sharp-constant estimates of the form
``sup (lhs - rhs)``.  All of them are coercive downward in every direction
that matters, and concave for the convex weight classes this package
targets, so one engine serves them all:

1. bracket a maximizer by scanning a coarse grid on a box, doubling the box
   (up to a cap) while the scan argmax sits on an expandable edge;
2. refine with golden-section sweeps, one coordinate at a time;
3. if a coordinate only improves toward -infinity (a monotone tail, e.g.
   the dual point has a zero component), clamp it at a fixed floor and
   verify by extrapolation that the tail has flattened there.

Everything is plain float arithmetic with a fixed evaluation order, so a
given objective always produces bit-identical results.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

__all__ = ["SearchConfig", "SearchError", "MaxResult", "golden_section_max", "maximize_concave", "guarded"]

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0
_EPS = math.ulp(1.0)


class SearchError(RuntimeError):
    """The search could not localize or certify a supremum."""


@dataclass(frozen=True)
class SearchConfig:
    """Knobs for :func:`maximize_concave`.

    ``floor`` is the saturation depth for monotone tails: a coordinate
    whose optimum runs to -infinity is pinned there and cross-checked 5
    units deeper.  ``scan_points`` gives the coarse-scan resolution per
    dimension count (index 0 used for 1-D, etc.).
    """

    start_halfwidth: float = 4.0
    max_doublings: int = 60
    floor: float = -40.0
    scan_points: tuple[int, int, int] = (33, 13, 9)
    point_tol: float = 1e-10
    golden_tol: float = 1e-11
    max_sweeps: int = 80
    tail_tol: float = 1e-10


DEFAULT_SEARCH = SearchConfig()


@dataclass(frozen=True)
class MaxResult:
    point: np.ndarray
    value: float
    floored: tuple[bool, ...]
    doublings: int


def golden_section_max(fun: Callable[[float], float], lo: float, hi: float,
                       tol: float = 1e-11) -> tuple[float, float]:
    """Golden-section search for the max of a unimodal scalar function.

    Returns ``(argmax, value)``; the value is re-evaluated at the final
    midpoint, and the best point actually seen is kept if it beats it.
    """
    if hi < lo:
        raise ValueError("golden_section_max needs lo <= hi")
    a, b = float(lo), float(hi)
    best_x, best_v = a, fun(a)
    vb = fun(b)
    if vb > best_v:
        best_x, best_v = b, vb
    x1 = b - _GOLDEN * (b - a)
    x2 = a + _GOLDEN * (b - a)
    f1, f2 = fun(x1), fun(x2)
    # The bracket cannot shrink below a few ulps of the endpoints, so an
    # absolute tolerance alone would loop forever once |argmax| is large;
    # widen it to the representable spacing at the current magnitude.
    while (b - a) > max(tol, 8.0 * _EPS * max(abs(a), abs(b))):
        if f1 < f2:
            a = x1
            x1, f1 = x2, f2
            x2 = a + _GOLDEN * (b - a)
            f2 = fun(x2)
            if f2 > best_v:
                best_x, best_v = x2, f2
        else:
            b = x2
            x2, f2 = x1, f1
            x1 = b - _GOLDEN * (b - a)
            f1 = fun(x1)
            if f1 > best_v:
                best_x, best_v = x1, f1
    xm = 0.5 * (a + b)
    vm = fun(xm)
    if vm >= best_v:
        return xm, vm
    return best_x, best_v


def guarded(fun: Callable) -> Callable:
    """Wrap a scalar objective so overflow reads as -infinity.

    Search then recedes from the overflowing region instead of crashing;
    the public log-substitution op stays strict and raises.
    """

    def safe(t):
        try:
            v = fun(t)
        except OverflowError:
            return -math.inf
        if math.isnan(v):
            return -math.inf
        return v

    return safe


def _scan(fun, lo, hi, pts):
    axes = [np.linspace(lo[j], hi[j], pts) for j in range(len(lo))]
    mesh = np.meshgrid(*axes, indexing="ij")
    flat = np.stack([m.ravel() for m in mesh], axis=-1)
    vals = np.array([fun(p) for p in flat])
    k = int(np.argmax(vals))
    idx = np.unravel_index(k, tuple([pts] * len(lo)))
    return flat[k].copy(), float(vals[k]), idx


def maximize_concave(fun: Callable[[np.ndarray], float], dim: int, *,
                     lower: Sequence[float] | None = None,
                     config: SearchConfig = DEFAULT_SEARCH,
                     warm_start: Sequence[float] | None = None) -> MaxResult:
    """Maximize ``fun`` over R^dim (or over ``x >= lower`` componentwise).

    ``fun`` maps a length-``dim`` ndarray to a float and may return ``-inf``
    where it is undefined or overflows.  Raises :class:`SearchError` when the
    bracket fails to close within the doubling budget, or when a floored
    tail keeps improving past the extrapolation depth.
    """
    if dim < 1 or dim > 3:
        raise ValueError(f"maximize_concave supports dim 1..3, got {dim}")
    lower_arr = np.full(dim, -np.inf) if lower is None else np.asarray(lower, dtype=float)
    if lower_arr.shape != (dim,):
        raise ValueError("lower bound must have one entry per dimension")
    return _maximize(fun, dim, lower_arr, config, warm_start, config.floor, allow_deepen=True)


def _maximize(fun, dim, lower_arr, config, warm_start, floor, allow_deepen) -> MaxResult:
    pts = config.scan_points[dim - 1]
    if warm_start is not None:
        centre = np.asarray(warm_start, dtype=float)
        lo = np.maximum(centre - 1.0, np.maximum(lower_arr, floor))
        hi = centre + 1.0
    else:
        lo = np.maximum(np.full(dim, -config.start_halfwidth), np.maximum(lower_arr, floor))
        hi = np.full(dim, config.start_halfwidth)
    # a lower bound above the default box would leave lo >= hi; reopen the
    # bracket upward from the bound instead
    hi = np.where(hi > lo, hi, lo + 2.0 * config.start_halfwidth)
    doublings = 0

    while True:
        # --- bracket: double the box while the scan argmax touches an expandable edge
        while True:
            x, val, idx = _scan(fun, lo, hi, pts)
            grew = False
            for j in range(dim):
                width = hi[j] - lo[j]
                if idx[j] == pts - 1:
                    hi[j] += width
                    grew = True
                if idx[j] == 0:
                    new_lo = max(lo[j] - width, lower_arr[j], floor)
                    if new_lo < lo[j]:
                        lo[j] = new_lo
                        grew = True
            if not grew:
                break
            doublings += 1
            if doublings > config.max_doublings:
                raise SearchError(
                    f"supremum not localized within {config.max_doublings} bracket doublings")

        if not np.isfinite(val):
            raise SearchError("objective is -infinity on the whole bracket")

        # --- refine: golden-section sweeps coordinate by coordinate
        best = val
        for _ in range(config.max_sweeps):
            moved = 0.0
            for j in range(dim):
                frozen = x.copy()

                def line(t, frozen=frozen, j=j):
                    p = frozen.copy()
                    p[j] = t
                    return fun(p)

                tj, vj = golden_section_max(line, lo[j], hi[j], tol=config.golden_tol)
                moved = max(moved, abs(tj - x[j]))
                x[j] = tj
                best = vj
            if moved < config.point_tol * max(1.0, float(np.max(np.abs(x)))):
                break

        # --- if refinement ran into an expandable edge, grow and retry
        edge_hit = False
        for j in range(dim):
            width = hi[j] - lo[j]
            if hi[j] - x[j] < 1e-9 * max(1.0, width):
                hi[j] += width
                edge_hit = True
            low_is_hard = lo[j] <= lower_arr[j] or lo[j] <= floor
            if x[j] - lo[j] < 1e-9 * max(1.0, width) and not low_is_hard:
                lo[j] = max(lo[j] - width, lower_arr[j], floor)
                edge_hit = True
        if not edge_hit:
            break
        doublings += 1
        if doublings > config.max_doublings:
            raise SearchError(
                f"supremum not localized within {config.max_doublings} bracket doublings")

    # --- floor extrapolation check for monotone tails
    floored = tuple(bool(x[j] - floor < 1e-6 and lower_arr[j] < floor) for j in range(dim))
    if any(floored):
        probe = x.copy()
        for j, fl in enumerate(floored):
            if fl:
                probe[j] = floor - 5.0
        deeper = fun(probe)
        if deeper > best + config.tail_tol:
            if allow_deepen:
                return _maximize(fun, dim, lower_arr, config, None, 2.0 * floor, False)
            raise SearchError("tail does not flatten at the search floor")
    return MaxResult(point=x, value=best, floored=floored, doublings=doublings)
