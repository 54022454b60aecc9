"""Mollification of weights by a compactly supported bump kernel.

``phi_{nu,1}`` denotes the mollified member ``(phi_nu * chi)(x) =
integral of phi_nu(x + u) chi(u) du`` over the unit cube, where ``chi``
is the normalized product bump ``c exp(-1/(1 - t^2))``.  The chain of
comparisons between raw and mollified members that
:func:`verify_mollify_chain` estimates:

* domination: ``phi_nu <= phi_{nu,1}`` pointwise;
* log gap: ``phi_{nu,1}(x) + A ln(1 + ||x||) <= phi_{nu+1,1}(x) + s``;
* unit shift: ``phi_{nu,1}(x + zeta) <= phi_{nu+1,1}(x) + K`` for
  ``zeta in [0,1]^n``, with ``K`` the raw family's own shift constant;
* argument doubling: ``phi_{nu,1}(2x) <= phi_{nu+2}(x) + K + a`` against
  the raw member two steps up (``a`` = raw doubling constant at nu+1),
  and the same bound with the mollified member ``phi_{nu+2,1}``.

The even-index mollified subfamily ``psi_m = phi_{2m,1}`` is then checked
to satisfy the i0/i2/i3 conditions with finite constants of its own.

Quadrature is tensor Gauss-Legendre.  Convergence on the bump is
root-exponential but slow at low orders, so the default order is 64 and
every mollified weight self-checks at construction: values at fixed probe
points must agree with the order+32 rule to 1e-9 relative.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.integrate import quad

from .weights import ConstantEstimate, WeightFamily, WeightFunction, estimate_condition_constant

__all__ = [
    "MollifierKernel",
    "bump_mollifier",
    "mollify",
    "DominationCheck",
    "ChainEstimate",
    "MollifyChainReport",
    "verify_mollify_chain",
]


def _bump_raw(t: np.ndarray) -> np.ndarray:
    """Unnormalized bump exp(-1/(1-t^2)) on (-1, 1), zero outside."""
    t = np.asarray(t, dtype=float)
    out = np.zeros_like(t)
    inside = np.abs(t) < 1.0
    with np.errstate(over="ignore", divide="ignore"):
        out[inside] = np.exp(-1.0 / (1.0 - t[inside] ** 2))
    return out


@dataclass(frozen=True)
class MollifierKernel:
    """Normalized product bump kernel on ``[-support, support]^dim``."""

    dim: int
    normalizer: float
    support: float = 1.0

    def __call__(self, u) -> np.ndarray:
        arr = np.asarray(u, dtype=float)
        if self.dim == 1:
            pts = arr.reshape(arr.shape + (1,))
        else:
            pts = arr
        vals = np.ones(pts.shape[:-1])
        for j in range(self.dim):
            vals = vals * (self.normalizer * _bump_raw(pts[..., j] / self.support)
                           / self.support)
        return vals


def bump_mollifier(dim: int = 1, support: float = 1.0) -> MollifierKernel:
    """The standard bump kernel, normalized to unit mass per axis."""
    if dim < 1 or dim > 3:
        raise ValueError(f"kernel dimension must be 1..3, got {dim}")
    if support <= 0:
        raise ValueError(f"kernel support must be positive, got {support}")
    mass, err = quad(lambda t: math.exp(-1.0 / (1.0 - t * t)), -1.0, 1.0,
                     epsabs=1e-14, epsrel=1e-13)
    if err > 1e-12:
        raise RuntimeError(f"bump mass quadrature did not converge (err={err:.2e})")
    return MollifierKernel(dim=dim, normalizer=1.0 / mass, support=support)


def _tensor_rule(kernel: MollifierKernel, order: int) -> tuple[np.ndarray, np.ndarray]:
    """Offsets (M, dim) and combined weights (M,) for the product rule.

    Per axis the rule integrates against the kernel factor directly:
    node ``support * v_i`` carries weight ``w_i * c * bump(v_i)``, so the
    tensor weights already include the kernel values.
    """
    nodes, wts = np.polynomial.legendre.leggauss(order)
    axis_w = wts * kernel.normalizer * _bump_raw(nodes)
    axis_nodes = kernel.support * nodes
    grids = np.meshgrid(*([axis_nodes] * kernel.dim), indexing="ij")
    offsets = np.stack([g.reshape(-1) for g in grids], axis=-1)
    combo = np.ones(1)
    for _ in range(kernel.dim):
        combo = np.multiply.outer(combo, axis_w).reshape(-1)
    return offsets, combo


def _apply_rule(w: WeightFunction, pts: np.ndarray, offsets: np.ndarray,
                combo: np.ndarray) -> np.ndarray:
    """Quadrature pass: pts has shape (K, dim), result (K,)."""
    n_nodes = offsets.shape[0]
    chunk = max(1, 2_000_000 // n_nodes)
    out = np.empty(pts.shape[0])
    for start in range(0, pts.shape[0], chunk):
        block = pts[start:start + chunk]
        shifted = block[:, None, :] + offsets[None, :, :]
        vals = w(shifted if w.dim > 1 else shifted[..., 0])
        out[start:start + chunk] = vals @ combo
    return out


def _probe_points(dim: int) -> np.ndarray:
    if dim == 1:
        return np.linspace(-3.0, 3.0, 9).reshape(-1, 1)
    axis = np.linspace(-3.0, 3.0, 5)
    grids = np.meshgrid(*([axis] * dim), indexing="ij")
    return np.stack([g.reshape(-1) for g in grids], axis=-1)


def mollify(w: WeightFunction, kernel: MollifierKernel | None = None,
            order: int = 64) -> WeightFunction:
    """Smooth a weight by convolution with the bump kernel.

    Supports dim 1 and 2 (the tensor rule cost grows as order^dim).  The
    returned weight is C^inf; convexity survives convolution, so the flag
    is carried over.  Construction fails if the order and order+32 rules
    disagree beyond 1e-9 relative at fixed probe points in [-3, 3]^dim.
    """
    if w.dim > 2:
        raise ValueError("mollification is implemented for dim 1 and 2 only")
    if order < 8:
        raise ValueError(f"quadrature order must be >= 8, got {order}")
    if kernel is None:
        kernel = bump_mollifier(w.dim)
    if kernel.dim != w.dim:
        raise ValueError(f"kernel dim {kernel.dim} does not match weight dim {w.dim}")
    offsets, combo = _tensor_rule(kernel, order)
    offsets_hi, combo_hi = _tensor_rule(kernel, order + 32)
    probes = _probe_points(w.dim)
    lo = _apply_rule(w, probes, offsets, combo)
    hi = _apply_rule(w, probes, offsets_hi, combo_hi)
    gap = np.abs(lo - hi)
    if not np.all(gap <= 1e-9 * np.maximum(1.0, np.abs(lo))):
        k = int(np.argmax(gap / np.maximum(1.0, np.abs(lo))))
        raise ValueError(
            f"quadrature order {order} is too low for {w.name or 'this weight'}: "
            f"order {order} vs {order + 32} differ by {gap[k]:.3e} at {tuple(probes[k])}")

    def evaluator(pts: np.ndarray) -> np.ndarray:
        flat = pts.reshape(-1, w.dim)
        return _apply_rule(w, flat, offsets, combo).reshape(pts.shape[:-1])

    return WeightFunction(evaluator, w.dim, name=f"mollified {w.name}".strip(),
                          form="mollified", smoothness="C^inf", convex=w.convex)


# ---------------------------------------------------------------------------
# chain verification


@dataclass(frozen=True)
class DominationCheck:
    """Pointwise ``phi_nu <= phi_{nu,1}``: the smallest observed gap."""

    nu: int
    min_gap: float
    witness: tuple[float, ...]

    @property
    def passed(self) -> bool:
        return self.min_gap >= -1e-8


@dataclass(frozen=True)
class ChainEstimate:
    """One estimated chain constant, optionally against a claimed bound.

    ``estimate`` is the grid sup of LHS - RHS on [0, R]^n; ``bound`` the
    constant the chain predicts (None when the claim is mere finiteness);
    ``margin`` is bound - estimate.  Doubling diagnostics as in
    :class:`~fenchellab.weights.ConstantEstimate`.
    """

    label: str
    nu: int
    estimate: float
    bound: float | None
    doubling_values: tuple[float, float, float]
    unbounded: bool
    witness: tuple[float, ...]

    @property
    def margin(self) -> float | None:
        if self.bound is None:
            return None
        return self.bound - self.estimate

    @property
    def passed(self) -> bool:
        if self.unbounded:
            return False
        if self.bound is None:
            return math.isfinite(self.estimate)
        return self.margin >= -1e-8


@dataclass(frozen=True)
class MollifyChainReport:
    family_name: str
    domination: tuple[DominationCheck, ...]
    log_gap: tuple[ChainEstimate, ...]
    shift: tuple[ChainEstimate, ...]
    doubling_raw: tuple[ChainEstimate, ...]
    doubling_mollified: tuple[ChainEstimate, ...]
    subfamily: dict[str, ConstantEstimate]

    @property
    def passed(self) -> bool:
        checks = (list(self.domination) + list(self.log_gap) + list(self.shift)
                  + list(self.doubling_raw) + list(self.doubling_mollified))
        if not all(c.passed for c in checks):
            return False
        return all(not est.unbounded and math.isfinite(est.value)
                   for est in self.subfamily.values())

    def lines(self) -> list[str]:
        out = []
        for c in self.domination:
            out.append(f"domination nu={c.nu}: min gap {c.min_gap:.3e} "
                       f"[{'ok' if c.passed else 'FAIL'}]")
        for group in (self.log_gap, self.shift, self.doubling_raw, self.doubling_mollified):
            for c in group:
                bd = "finite" if c.bound is None else f"bound {c.bound:.6g}"
                out.append(f"{c.label} nu={c.nu}: est {c.estimate:.6g} ({bd}) "
                           f"[{'ok' if c.passed else 'FAIL'}]")
        for cond, est in sorted(self.subfamily.items()):
            ok = not est.unbounded and math.isfinite(est.value)
            out.append(f"subfamily {cond}: est {est.value:.6g} "
                       f"[{'ok' if ok else 'FAIL'}]")
        return out


def _orthant_grid(dim: int, radius: float, points: int) -> tuple[list[np.ndarray], np.ndarray]:
    axes = [np.linspace(0.0, radius, points) for _ in range(dim)]
    mesh = np.meshgrid(*axes, indexing="ij")
    return axes, np.stack([g.reshape(-1) for g in mesh], axis=-1)


def _sup_with_doubling(gap_at, dim: int, radius: float, points: int,
                       label: str, nu: int, bound: float | None) -> ChainEstimate:
    """Sup of a gap function over orthant grids at R, 2R, 4R."""
    sups: list[float] = []
    witness: tuple[float, ...] = ()
    for k, r in enumerate((radius, 2 * radius, 4 * radius)):
        axes, pts = _orthant_grid(dim, r, points)
        gap = np.asarray(gap_at(pts), dtype=float)
        if not np.all(np.isfinite(gap)):
            raise ValueError(
                f"{label} at nu={nu}: weight overflowed on the radius-{r:g} grid; "
                "reduce the probe radius")
        flat = int(np.argmax(gap))
        sups.append(float(gap[flat]))
        if k == 0:
            witness = tuple(float(c) for c in pts[flat])
    unbounded = (sups[2] - sups[1]) > 0.1 * max(1.0, abs(sups[1]))
    return ChainEstimate(label=label, nu=nu, estimate=sups[0], bound=bound,
                         doubling_values=(sups[0], sups[1], sups[2]),
                         unbounded=unbounded, witness=witness)


def _shift_corners(dim: int) -> np.ndarray:
    """Probe shifts zeta in [0,1]^n: corners plus midpoints."""
    if dim == 1:
        return np.array([[0.25], [0.5], [0.75], [1.0]])
    axis = np.array([0.5, 1.0])
    grids = np.meshgrid(*([axis] * dim), indexing="ij")
    return np.stack([g.reshape(-1) for g in grids], axis=-1)


def verify_mollify_chain(family: WeightFamily, nus: Sequence[int] = (1, 2),
                         A: float = 1.0, radius: float = 8.0,
                         points: int | None = None, order: int = 64,
                         subfamily_index: int = 1, seed: int = 0) -> MollifyChainReport:
    """Estimate every constant in the raw-vs-mollified comparison chain.

    For each ``nu`` in ``nus`` the five comparisons listed in the module
    docstring are estimated on orthant grids (all weights here are
    symmetric coordinatewise, so the orthant carries the sup) with R, 2R,
    4R doubling diagnostics.  Bounds for the shift and doubling steps come
    from the raw family's own i2/i3 constants, estimated on the same
    grids.  Finally the even-index mollified subfamily is checked at
    ``subfamily_index`` for finite i0/i2/i3 constants.
    """
    if family.dim > 2:
        raise ValueError("chain verification supports dim 1 and 2 only")
    if points is None:
        points = {1: 201, 2: 33}[family.dim]
    dim = family.dim
    top = max(max(nus) + 2, 2 * subfamily_index + 2)
    moll: dict[int, WeightFunction] = {}
    for m in range(min(min(nus), 2 * subfamily_index), top + 1):
        moll[m] = mollify(family.member(m), order=order)

    rng = np.random.default_rng(seed)
    domination: list[DominationCheck] = []
    log_gap: list[ChainEstimate] = []
    shift: list[ChainEstimate] = []
    doubling_raw: list[ChainEstimate] = []
    doubling_moll: list[ChainEstimate] = []

    for nu in nus:
        raw_lo, raw_two_up = family.member(nu), family.member(nu + 2)
        m_lo, m_up, m_two_up = moll[nu], moll[nu + 1], moll[nu + 2]

        # Smallest gap of mollified over raw, on the grid and at random points.
        _, pts = _orthant_grid(dim, radius, points)
        rand = rng.uniform(-radius / 2, radius / 2, size=(100, dim))
        both = np.concatenate([pts, rand], axis=0)
        x = both if dim > 1 else both[..., 0]
        gaps = m_lo(x) - raw_lo(x)
        k = int(np.argmin(gaps))
        domination.append(DominationCheck(nu=nu, min_gap=float(gaps[k]),
                                          witness=tuple(float(c) for c in both[k])))

        def gap_log(p, lo=m_lo, up=m_up):
            x = p if dim > 1 else p[..., 0]
            return lo(x) + A * np.log1p(np.sqrt(np.sum(p * p, axis=-1))) - up(x)

        log_gap.append(_sup_with_doubling(gap_log, dim, radius, points,
                                          "mollified log gap", nu, None))

        shift_bound = estimate_condition_constant(
            family, "i2", nu, radius=radius, points=points)
        corners = _shift_corners(dim)

        def gap_shift(p, lo=m_lo, up=m_up):
            x = p if dim > 1 else p[..., 0]
            best = np.full(p.shape[0], -np.inf)
            for zeta in corners:
                q = p + zeta
                best = np.maximum(best, lo(q if dim > 1 else q[..., 0]))
            return best - up(x)

        shift.append(_sup_with_doubling(gap_shift, dim, radius, points,
                                        "mollified unit shift", nu,
                                        shift_bound.value))

        double_bound = (shift_bound.value
                        + estimate_condition_constant(family, "i3", nu + 1,
                                                      radius=radius, points=points).value)

        def gap_double_raw(p, lo=m_lo, up=raw_two_up):
            x = p if dim > 1 else p[..., 0]
            return lo(2.0 * x) - up(x)

        def gap_double_moll(p, lo=m_lo, up=m_two_up):
            x = p if dim > 1 else p[..., 0]
            return lo(2.0 * x) - up(x)

        doubling_raw.append(_sup_with_doubling(gap_double_raw, dim, radius, points,
                                               "mollified doubling vs raw", nu,
                                               double_bound))
        doubling_moll.append(_sup_with_doubling(gap_double_moll, dim, radius, points,
                                                "mollified doubling vs mollified", nu,
                                                double_bound))

    sub = WeightFamily(member_factory=lambda m: moll[2 * m], dim=dim,
                       name=f"{family.name or 'family'} even mollified")
    subfamily = {
        "i0": estimate_condition_constant(sub, "i0", subfamily_index, A=A,
                                          radius=radius, points=points),
        "i2": estimate_condition_constant(sub, "i2", subfamily_index,
                                          radius=radius, points=points),
        "i3": estimate_condition_constant(sub, "i3", subfamily_index,
                                          radius=radius, points=points),
    }
    return MollifyChainReport(family_name=family.name or "family",
                              domination=tuple(domination),
                              log_gap=tuple(log_gap), shift=tuple(shift),
                              doubling_raw=tuple(doubling_raw),
                              doubling_mollified=tuple(doubling_moll),
                              subfamily=subfamily)
