"""Discrete Young-Fenchel conjugation on sampled grids.

For grid data ``f`` on nodes ``y_i`` the discrete conjugate at a dual
point ``x`` is ``max_i (<x, y_i> - f(y_i))``, skipping +infinity nodes.
Two routes are kept deliberately separate so they can check each other:

* :func:`brute_conjugate` -- the definition, evaluated on every node;
* :func:`fast_conjugate_1d` -- the linear-time transform that walks the
  lower convex hull of the sampled epigraph with a monotone pointer.

``conjugate_nd`` factors the n-D transform into iterated 1-D passes
(sup over a product grid is the iterated sup), and ``biconjugate``
composes two transforms to produce the discrete convex envelope, which
is never above the data and converges O(h) on convex samples.
"""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from .grid import ExtendedReal, GridFunction

__all__ = ["brute_conjugate", "fast_conjugate_1d", "conjugate_nd", "biconjugate"]

_NEG_SENTINEL = -np.inf  # comparison-only sentinel; never enters a sum


def _as_dual_matrix(duals, dim: int) -> np.ndarray:
    arr = np.asarray(duals, dtype=float)
    if dim == 1 and arr.ndim == 1:
        arr = arr[:, None]
    if arr.ndim != 2 or arr.shape[1] != dim:
        raise ValueError(f"dual points must have shape (m, {dim})")
    return arr


def brute_conjugate(f: GridFunction, duals) -> list[ExtendedReal]:
    """Conjugate values ``max_y (<x,y> - f(y))`` over all grid nodes.

    ``duals`` is a sequence of dual points (plain floats for 1-D grids).
    Ties resolve to the lexicographically first node, and the inner
    product is evaluated in fixed coordinate order, so results are
    reproducible bit for bit.
    """
    if not np.any(f.finite_mask):
        raise ValueError("conjugate of identically +inf grid data")
    duals = _as_dual_matrix(duals, f.dim)
    if duals.shape[0] == 0:
        return []
    mesh = np.meshgrid(*f.axes, indexing="ij")
    mask = f.finite_mask
    out: list[ExtendedReal] = []
    for x in duals:
        inner = x[0] * mesh[0]
        for j in range(1, f.dim):
            inner = inner + x[j] * mesh[j]
        scores = np.where(mask, inner - np.where(mask, f.values, 0.0), _NEG_SENTINEL)
        out.append(ExtendedReal(float(np.max(scores))))
    return out


def _lower_hull(y: np.ndarray, v: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Vertices of the lower convex hull of the points ``(y_i, v_i)``.

    Collinear interior points are dropped; the returned slope sequence is
    strictly increasing.
    """
    keep: list[int] = []
    for i in range(y.size):
        while len(keep) >= 2:
            a, b = keep[-2], keep[-1]
            # pop b unless (a, b, i) turns strictly convex
            if (y[b] - y[a]) * (v[i] - v[b]) - (y[i] - y[b]) * (v[b] - v[a]) > 0.0:
                break
            keep.pop()
        keep.append(i)
    idx = np.array(keep, dtype=int)
    return y[idx], v[idx]


def fast_conjugate_1d(f: GridFunction, duals) -> list[ExtendedReal]:
    """Linear-time 1-D discrete conjugate via the epigraph hull.

    ``duals`` must be sorted nondecreasing; the hull pointer then moves
    monotonically and the whole transform costs O(nodes + duals).
    Agrees with :func:`brute_conjugate` to within floating rounding.
    """
    if f.dim != 1:
        raise ValueError("fast_conjugate_1d requires 1-D grid data")
    duals_arr = np.asarray(duals, dtype=float).ravel()
    if duals_arr.size == 0:
        return []
    if np.any(np.diff(duals_arr) < 0):
        raise ValueError("unsorted duals: fast_conjugate_1d needs nondecreasing dual points")
    mask = f.finite_mask
    if not np.any(mask):
        raise ValueError("conjugate of identically +inf grid data")
    y = f.axes[0][mask]
    v = f.values[mask]
    hy, hv = _lower_hull(y, v)
    slopes = np.diff(hv) / np.diff(hy)
    out: list[ExtendedReal] = []
    j = 0
    for x in duals_arr:
        while j < slopes.size and slopes[j] < x:
            j += 1
        out.append(ExtendedReal(float(x * hy[j] - hv[j])))
    return out


def _fiber_pass(y: np.ndarray, vals: np.ndarray, valid: np.ndarray,
                duals: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Apply ``w -> max_y (x*y + w(y))`` along the last axis of ``vals``.

    Rows with no valid node map to invalid output rows (they contribute
    nothing to later suprema).
    """
    lead = vals.shape[:-1]
    flat_v = vals.reshape(-1, vals.shape[-1])
    flat_m = valid.reshape(-1, vals.shape[-1])
    out_v = np.zeros((flat_v.shape[0], duals.size))
    out_m = np.zeros((flat_v.shape[0], duals.size), dtype=bool)
    for r in range(flat_v.shape[0]):
        m = flat_m[r]
        if not m.any():
            continue
        # max(x*y + w) is the conjugate of -w
        hy, hv = _lower_hull(y[m], -flat_v[r][m])
        slopes = np.diff(hv) / np.diff(hy)
        j = 0
        for c, x in enumerate(duals):
            while j < slopes.size and slopes[j] < x:
                j += 1
            out_v[r, c] = x * hy[j] - hv[j]
            out_m[r, c] = True
    return out_v.reshape(lead + (duals.size,)), out_m.reshape(lead + (duals.size,))


def conjugate_nd(f: GridFunction, dual_axes: Sequence[Sequence[float]] | None = None) -> GridFunction:
    """Discrete conjugate on a tensor dual grid via iterated 1-D passes.

    ``dual_axes`` defaults to the primal axes.  The result agrees with
    :func:`brute_conjugate` at every dual node (iterated suprema over a
    product grid equal the joint supremum).
    """
    if dual_axes is None:
        dual_axes = f.axes
    dual_axes = tuple(np.asarray(a, dtype=float) for a in dual_axes)
    if len(dual_axes) != f.dim:
        raise ValueError(f"need {f.dim} dual axes, got {len(dual_axes)}")
    for j, a in enumerate(dual_axes):
        if a.ndim != 1 or a.size < 1:
            raise ValueError(f"dual axis {j} must be a nonempty 1-D array")
        if np.any(np.diff(a) <= 0):
            raise ValueError(f"dual axis {j} must be strictly increasing")
    if not np.any(f.finite_mask):
        raise ValueError("conjugate of identically +inf grid data")

    # Start from w = -f; every pass applies  w <- max_y (x*y + w)  along one
    # axis, which after the last pass is exactly sup(<x,y> - f(y)).
    valid = f.finite_mask.copy()
    vals = np.where(valid, -f.values, 0.0)
    for k in range(f.dim):
        moved_v = np.moveaxis(vals, k, -1)
        moved_m = np.moveaxis(valid, k, -1)
        new_v, new_m = _fiber_pass(f.axes[k], moved_v, moved_m, dual_axes[k])
        vals = np.moveaxis(new_v, -1, k)
        valid = np.moveaxis(new_m, -1, k)
    if not valid.all():
        raise RuntimeError("conjugate_nd produced unexpected invalid entries")
    return GridFunction(dual_axes, vals)


def _slope_range(f: GridFunction, axis: int) -> tuple[float, float]:
    """Range of finite-difference slopes of the samples along one axis."""
    y = f.axes[axis]
    v = np.moveaxis(f.values, axis, -1)
    m = np.moveaxis(f.finite_mask, axis, -1)
    pair = m[..., :-1] & m[..., 1:]
    if not pair.any():
        return -1.0, 1.0
    with np.errstate(invalid="ignore"):
        slopes = (v[..., 1:] - v[..., :-1]) / np.diff(y)
    lo = float(np.min(slopes[pair]))
    hi = float(np.max(slopes[pair]))
    if hi - lo < 1e-12:
        lo, hi = lo - 0.5, hi + 0.5
    return lo, hi


def biconjugate(f: GridFunction) -> GridFunction:
    """Discrete convex envelope: conjugate twice, back onto ``f``'s grid.

    The intermediate dual grid spans the sampled slope range of each axis
    with ``2 * len(axis) + 1`` uniform nodes.  The result is pointwise
    <= f up to rounding, equals f up to O(h) on convex samples, and its
    error contracts under mesh refinement.
    """
    dual_axes = []
    for k in range(f.dim):
        lo, hi = _slope_range(f, k)
        dual_axes.append(np.linspace(lo, hi, 2 * f.axes[k].size + 1))
    star = conjugate_nd(f, dual_axes)
    return conjugate_nd(star, f.axes)
