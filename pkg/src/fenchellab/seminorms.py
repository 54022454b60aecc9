"""Weighted sup-seminorms and the inequalities that link them.

Four seminorm families on an analytic test function ``f`` (a product of
polynomial-Gaussian factors, entire on C^n):

* ``p_{nu,m}(f)``: strip growth, ``sup |f(z)| (1+||z||)^m e^{-phi_nu(Im z)}``
  over z in C^n, with the weight applied to the coordinatewise imaginary
  vector;
* ``rho_{m,nu}(f)``: derivative decay on R^n,
  ``sup (1+||x||)^m |D^a f(x)| e^{psi*_nu(a)} / a!`` over x and all
  multi-indices a, where ``psi*_nu`` is the lattice table of the
  log-substituted conjugate of ``phi_nu``;
* ``||f||_{m,psi*_nu}`` (the G-functional): moment decay,
  ``sup |x^b D^a f(x)| e^{psi*_nu(b)} / b!`` over x, all b, and |a| <= m;
* ``q_{m,nu}(f)``: pointwise conjugate-weight decay,
  ``sup |D^a f(x)| e^{phi*_nu(x)}`` over x and |a| <= m, with ``phi*_nu``
  the ordinary Young-Fenchel conjugate of the weight.

All sups are grid estimates with explicit diagnostics: the witness point,
whether the argmax sits on the grid boundary (``saturated``), whether the
objective has decayed at the boundary / in the last lattice shells
(``stabilized``), and per-shell maxima for the lattice directions.

The verification helpers estimate each constant in the embedding chain
from the weight family itself and compare grid seminorms against the
claimed bounds; see :func:`verify_embedding_chain`,
:func:`verify_theorem4_equivalence`, :func:`lattice_subadditivity`,
:func:`hspace_sandwich`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy import optimize as _opt

from .conjugate import conjugate_nd
from .grid import GridFunction, MultiIndex, multi_indices_of_order
from .logconj import ConjugateTable, discrete_log_conjugate, lattice_conjugate_table
from .search import DEFAULT_SEARCH, SearchConfig, maximize_concave
from .testfunctions import TestFunction
from .weights import WeightFamily, WeightFunction, estimate_condition_constant

__all__ = [
    "ComplexGrid",
    "default_real_axes",
    "default_complex_grid",
    "default_lattice_bound",
    "SeminormReport",
    "p_seminorm",
    "rho_seminorm",
    "g_seminorm",
    "q_seminorm",
    "conjugate_weight",
    "log_linear_constant",
    "TaylorReport",
    "taylor_extend",
    "BoundCheck",
    "EmbeddingChainReport",
    "verify_embedding_chain",
    "Theorem4Report",
    "verify_theorem4_equivalence",
    "SubadditivityCheck",
    "lattice_subadditivity",
    "SandwichCheck",
    "hspace_sandwich",
    "stirling_binomial_check",
    "Inequality3Report",
    "derivative_factorial_decay",
]


def default_real_axes(dim: int) -> tuple[np.ndarray, ...]:
    """Odd-count symmetric grids (0 is always a node)."""
    if dim == 1:
        return (np.linspace(-10.0, 10.0, 2001),)
    if dim == 2:
        return (np.linspace(-6.0, 6.0, 201),) * 2
    if dim == 3:
        return (np.linspace(-4.0, 4.0, 61),) * 3
    raise ValueError(f"dimension must be 1..3, got {dim}")


@dataclass(frozen=True)
class ComplexGrid:
    """Tensor grid over C^n: per-axis real and imaginary nodes."""

    re_axes: tuple[np.ndarray, ...]
    im_axes: tuple[np.ndarray, ...]

    @property
    def dim(self) -> int:
        return len(self.re_axes)

    def __post_init__(self):
        if len(self.re_axes) != len(self.im_axes):
            raise ValueError("need matching real and imaginary axis counts")


def default_complex_grid(dim: int) -> ComplexGrid:
    if dim == 1:
        return ComplexGrid((np.linspace(-8.0, 8.0, 321),),
                           (np.linspace(-3.0, 3.0, 121),))
    if dim == 2:
        return ComplexGrid((np.linspace(-6.0, 6.0, 61),) * 2,
                           (np.linspace(-2.0, 2.0, 21),) * 2)
    raise ValueError("complex grids are implemented for dim 1 and 2 only")


def default_lattice_bound(dim: int) -> int:
    return {1: 30, 2: 14, 3: 8}[dim]


@dataclass(frozen=True)
class SeminormReport:
    """A grid sup with honesty diagnostics.

    ``saturated`` means the argmax touched the grid boundary (the true sup
    may lie outside); ``stabilized`` means the objective had decayed at the
    truncation edge (grid boundary for continuous sups, last lattice shells
    for multi-index sups).
    """

    name: str
    value: float
    witness: dict
    saturated: bool
    saturated_faces: tuple[str, ...]
    stabilized: bool
    shell_maxima: tuple[float, ...]
    truncation: dict | None


def _shells_stabilized(shells: Sequence[float], value: float) -> bool:
    """Lattice truncation verdict: geometric decay or negligible tail.

    The primary criterion is a shell-maximum ratio below 0.5 across the
    last three transitions; shells that have already collapsed below
    1e-8 of the overall value count as stabilized regardless.
    """
    if not shells:
        return True
    tail = max(shells[-3:]) if len(shells) >= 3 else shells[-1]
    if tail <= 1e-8 * max(value, 1e-300):
        return True
    if len(shells) >= 4:
        recent = shells[-4:]
        return all(recent[k + 1] <= 0.5 * recent[k] + 1e-300 for k in range(3))
    return False


def _boundary_faces(idx: tuple[int, ...], shapes: Sequence[int],
                    labels: Sequence[str]) -> tuple[str, ...]:
    faces = []
    for k, (i, size) in enumerate(zip(idx, shapes)):
        if size < 2:
            continue
        if i == 0:
            faces.append(f"{labels[k]} min")
        elif i == size - 1:
            faces.append(f"{labels[k]} max")
    return tuple(faces)


def _boundary_mask(shape: tuple[int, ...]) -> np.ndarray:
    mask = np.zeros(shape, dtype=bool)
    for k, size in enumerate(shape):
        if size < 2:
            continue
        sl = [slice(None)] * len(shape)
        sl[k] = 0
        mask[tuple(sl)] = True
        sl[k] = size - 1
        mask[tuple(sl)] = True
    return mask


def _polish_p(f: TestFunction, weight: WeightFunction, m: int,
              grid: ComplexGrid, idx: tuple[int, ...]):
    """Refine the grid argmax of the strip objective inside its cell.

    Bounded derivative-free maximization of the log objective within two
    grid steps of the winning node (clamped to the grid box), so the
    reported sup is no worse than the node value and sharp when the true
    maximizer falls between nodes.
    """
    dim = f.dim
    x0, bounds = [], []
    for j in range(dim):
        for ax, i in ((grid.re_axes[j], idx[2 * j]), (grid.im_axes[j], idx[2 * j + 1])):
            h = float(ax[1] - ax[0]) if ax.size > 1 else 1.0
            c = float(ax[i])
            x0.append(c)
            bounds.append((max(float(ax[0]), c - 2 * h), min(float(ax[-1]), c + 2 * h)))

    def neg_log(pt):
        val = 0.0
        for j in range(dim):
            fv = abs(f.factors[j](complex(pt[2 * j], pt[2 * j + 1])))
            if fv == 0.0 or not math.isfinite(fv):
                return math.inf
            val += math.log(fv)
        if m:
            val += m * math.log1p(math.sqrt(math.fsum(c * c for c in pt)))
        im = np.array([pt[2 * j + 1] for j in range(dim)])
        w = float(weight(im if dim > 1 else im[0]))
        return w - val if math.isfinite(w) else math.inf

    res = _opt.minimize(neg_log, np.array(x0), method="Powell", bounds=bounds,
                        options={"xtol": 1e-10, "ftol": 1e-14, "maxiter": 10000})
    if not res.success or not math.isfinite(res.fun):
        return None
    z = tuple(complex(res.x[2 * j], res.x[2 * j + 1]) for j in range(dim))
    return math.exp(-float(res.fun)), z


def p_seminorm(f: TestFunction, weight: WeightFunction, m: int,
               grid: ComplexGrid | None = None, polish: bool = True) -> SeminormReport:
    """Strip-growth seminorm ``sup |f(z)|(1+||z||)^m e^{-phi(Im z)}``.

    The sup is over the tensor grid of per-axis rectangles
    ``re_axes[j] x im_axes[j]``; the product structure of ``f`` keeps the
    evaluation cost at one 1-D complex evaluation per axis.  ``polish``
    refines the argmax within its grid cell (the maximum routinely falls
    between nodes, and near-equality bounds need the sharp value).
    """
    if m < 0:
        raise ValueError("polynomial order m must be >= 0")
    dim = f.dim
    if weight.dim != dim:
        raise ValueError(f"weight dim {weight.dim} does not match function dim {dim}")
    if grid is None:
        grid = default_complex_grid(dim)
    if grid.dim != dim:
        raise ValueError(f"grid dim {grid.dim} does not match function dim {dim}")

    # |f| over the full grid as an outer product of per-axis moduli.
    axis_abs = []
    for j in range(dim):
        z = grid.re_axes[j][:, None] + 1j * grid.im_axes[j][None, :]
        axis_abs.append(np.abs(f.factors[j](z)))
    obj = axis_abs[0]
    for part in axis_abs[1:]:
        obj = np.multiply.outer(obj, part)

    # (1 + ||z||)^m from the broadcast sum of per-axis |z_j|^2.
    full_shape = obj.shape
    if m > 0:
        norm_sq = np.zeros(full_shape)
        for j in range(dim):
            s = grid.re_axes[j][:, None] ** 2 + grid.im_axes[j][None, :] ** 2
            shape = [1] * (2 * dim)
            shape[2 * j], shape[2 * j + 1] = s.shape
            norm_sq = norm_sq + s.reshape(shape)
        obj = obj * (1.0 + np.sqrt(norm_sq)) ** m

    # e^{-phi(Im z)} broadcast over the imaginary axes only.
    im_mesh = np.meshgrid(*grid.im_axes, indexing="ij")
    im_pts = np.stack(im_mesh, axis=-1)
    wvals = weight(im_pts if dim > 1 else im_pts[..., 0])
    shape = [1] * (2 * dim)
    for j in range(dim):
        shape[2 * j + 1] = grid.im_axes[j].size
    obj = obj * np.exp(-np.asarray(wvals).reshape(shape))

    flat = int(np.argmax(obj))
    idx = np.unravel_index(flat, full_shape)
    value = float(obj[idx])
    witness_z = tuple(complex(grid.re_axes[j][idx[2 * j]], grid.im_axes[j][idx[2 * j + 1]])
                      for j in range(dim))
    polished = False
    if polish and value > 0.0:
        refined = _polish_p(f, weight, m, grid, idx)
        if refined is not None and refined[0] > value:
            value, witness_z = refined
            polished = True
    labels = []
    for j in range(dim):
        labels.extend([f"Re z{j + 1}", f"Im z{j + 1}"])
    faces = _boundary_faces(idx, full_shape, labels)
    boundary_max = float(np.max(obj[_boundary_mask(full_shape)]))
    return SeminormReport(name="p", value=value, witness={"z": witness_z},
                          saturated=bool(faces), saturated_faces=faces,
                          stabilized=boundary_max <= 1e-3 * max(value, 1e-300),
                          shell_maxima=(), truncation={"boundary_max": boundary_max,
                                                       "polished": polished})


def _derivative_lines(f: TestFunction, axes: Sequence[np.ndarray]):
    """Cached per-axis |d^k factor_j| values on the axes."""
    cache: dict[tuple[int, int], np.ndarray] = {}

    def line(j: int, k: int) -> np.ndarray:
        if (j, k) not in cache:
            cache[(j, k)] = np.abs(f.factors[j].derivative(k)(axes[j]))
        return cache[(j, k)]

    return line


def _outer(lines: Sequence[np.ndarray]) -> np.ndarray:
    out = lines[0]
    for ln in lines[1:]:
        out = np.multiply.outer(out, ln)
    return out


def rho_seminorm(f: TestFunction, table: ConjugateTable, m: int,
                 axes: Sequence[np.ndarray] | None = None,
                 max_order: int | None = None) -> SeminormReport:
    """Derivative-decay seminorm truncated at ``|alpha| <= max_order``.

    Per multi-index the weight is ``exp(psi*(alpha) - ln alpha!)``; the
    m = 0 case factorizes across axes (sup of a product of nonnegative
    per-axis lines is the product of per-axis sups), higher m keeps the
    full tensor grid for the (1+||x||)^m factor.
    """
    if m < 0:
        raise ValueError("polynomial order m must be >= 0")
    dim = f.dim
    if table.dim != dim:
        raise ValueError(f"table dim {table.dim} does not match function dim {dim}")
    if axes is None:
        axes = default_real_axes(dim)
    if max_order is None:
        max_order = table.bound
    if max_order > table.bound:
        raise ValueError(f"max_order {max_order} exceeds table bound {table.bound}")
    line = _derivative_lines(f, axes)
    polyfac = None
    if m > 0:
        mesh = np.meshgrid(*axes, indexing="ij")
        polyfac = (1.0 + np.sqrt(sum(g * g for g in mesh))) ** m

    value = -math.inf
    witness: dict = {}
    best_idx: tuple[int, ...] = ()
    shell_maxima: list[float] = []
    for order in range(max_order + 1):
        shell_best = 0.0
        for alpha in multi_indices_of_order(dim, order):
            scale = math.exp(table.value(alpha) - alpha.log_factorial)
            lines = [line(j, alpha[j]) for j in range(dim)]
            if m == 0:
                per_axis = [int(np.argmax(ln)) for ln in lines]
                cand = scale * math.prod(float(ln[k]) for ln, k in zip(lines, per_axis))
                idx = tuple(per_axis)
            else:
                grid_vals = _outer(lines) * polyfac
                flat = int(np.argmax(grid_vals))
                idx = np.unravel_index(flat, grid_vals.shape)
                cand = scale * float(grid_vals[idx])
            shell_best = max(shell_best, cand)
            if cand > value:
                value = cand
                witness = {"x": tuple(float(axes[j][idx[j]]) for j in range(dim)),
                           "alpha": alpha.parts}
                best_idx = tuple(idx)
        shell_maxima.append(shell_best)

    labels = [f"x{j + 1}" for j in range(dim)]
    faces = _boundary_faces(best_idx, [ax.size for ax in axes], labels)
    tail = max(shell_maxima[-3:]) if len(shell_maxima) >= 3 else shell_maxima[-1]
    return SeminormReport(name="rho", value=value, witness=witness,
                          saturated=bool(faces), saturated_faces=faces,
                          stabilized=_shells_stabilized(shell_maxima, value),
                          shell_maxima=tuple(shell_maxima),
                          truncation={"max_order": max_order,
                                      "tail_ratio": tail / max(value, 1e-300)})


def _g_core(dline, axes: Sequence[np.ndarray], table: ConjugateTable, m: int,
            lattice_bound: int, name: str) -> SeminormReport:
    """Separable max for the moment-decay functional.

    ``dline(j, k)`` supplies the nonnegative per-axis line ``|d^k f_j|`` on
    ``axes[j]``; every (a, b) candidate is a product of per-axis sups of
    ``|x|^{b_j} * dline(j, a_j)``.
    """
    dim = len(axes)
    powers = []
    for j in range(dim):
        p = [np.ones_like(axes[j])]
        ab = np.abs(axes[j])
        for _ in range(lattice_bound):
            p.append(p[-1] * ab)
        powers.append(p)
    alphas = [a for s in range(m + 1) for a in multi_indices_of_order(dim, s)]

    value = -math.inf
    witness: dict = {}
    best_idx: tuple[int, ...] = ()
    shell_maxima: list[float] = []
    for order in range(lattice_bound + 1):
        shell_best = 0.0
        for beta in multi_indices_of_order(dim, order):
            scale = math.exp(table.value(beta) - beta.log_factorial)
            for alpha in alphas:
                cand = scale
                idx = []
                for j in range(dim):
                    ln = powers[j][beta[j]] * dline(j, alpha[j])
                    k = int(np.argmax(ln))
                    idx.append(k)
                    cand *= float(ln[k])
                shell_best = max(shell_best, cand)
                if cand > value:
                    value = cand
                    witness = {"x": tuple(float(axes[j][idx[j]]) for j in range(dim)),
                               "alpha": alpha.parts, "beta": beta.parts}
                    best_idx = tuple(idx)
        shell_maxima.append(shell_best)

    labels = [f"x{j + 1}" for j in range(dim)]
    faces = _boundary_faces(best_idx, [ax.size for ax in axes], labels)
    tail = max(shell_maxima[-3:]) if len(shell_maxima) >= 3 else shell_maxima[-1]
    return SeminormReport(name=name, value=value, witness=witness,
                          saturated=bool(faces), saturated_faces=faces,
                          stabilized=_shells_stabilized(shell_maxima, value),
                          shell_maxima=tuple(shell_maxima),
                          truncation={"lattice_bound": lattice_bound,
                                      "tail_ratio": tail / max(value, 1e-300)})


def g_seminorm(f: TestFunction, table: ConjugateTable, m: int,
               axes: Sequence[np.ndarray] | None = None,
               lattice_bound: int | None = None) -> SeminormReport:
    """Moment-decay functional ``sup |x^b D^a f| e^{psi*(b)} / b!``.

    Fully separable: every (a, b) candidate reduces to a product of
    per-axis sups of ``|x|^{b_j} |d^{a_j} factor_j|``.
    """
    if m < 0:
        raise ValueError("derivative order m must be >= 0")
    dim = f.dim
    if table.dim != dim:
        raise ValueError(f"table dim {table.dim} does not match function dim {dim}")
    if axes is None:
        axes = default_real_axes(dim)
    if lattice_bound is None:
        lattice_bound = table.bound
    if lattice_bound > table.bound:
        raise ValueError(f"lattice_bound {lattice_bound} exceeds table bound {table.bound}")
    return _g_core(_derivative_lines(f, axes), axes, table, m, lattice_bound, "g")


def conjugate_weight(weight: WeightFunction, axes: Sequence[np.ndarray],
                     sample_points: int | None = None,
                     start_halfwidth: float = 4.0,
                     max_doublings: int = 30) -> GridFunction:
    """Tabulate the Young-Fenchel conjugate ``phi*`` on the given axes.

    The weight is sampled on ``[-L, L]^n`` with L doubled until the
    sampled edge slope along every axis exceeds every requested dual
    coordinate, so each grid sup is attained in the sampled box.
    """
    dim = weight.dim
    if len(axes) != dim:
        raise ValueError(f"need {dim} dual axes, got {len(axes)}")
    if sample_points is None:
        sample_points = {1: 4001, 2: 501, 3: 121}[dim]
    targets = [1.05 * max(1.0, float(np.max(np.abs(ax)))) for ax in axes]
    L = start_halfwidth
    for _ in range(max_doublings):
        t = np.linspace(0.0, L, sample_points)
        h = t[1] - t[0]
        ok = True
        for j in range(dim):
            ray = np.zeros((sample_points, dim))
            ray[:, j] = t
            vals = weight(ray if dim > 1 else ray[:, 0])
            if (vals[-1] - vals[-2]) / h < targets[j]:
                ok = False
                break
        if ok:
            break
        L *= 2.0
    else:
        raise RuntimeError("weight slope never covered the dual range; "
                           "is the weight superlinear?")
    sample_axes = tuple(np.linspace(-L, L, sample_points) for _ in range(dim))
    mesh = np.meshgrid(*sample_axes, indexing="ij")
    pts = np.stack(mesh, axis=-1)
    vals = weight(pts if dim > 1 else pts[..., 0])
    sampled = GridFunction(axes=sample_axes, values=np.asarray(vals, dtype=float))
    return conjugate_nd(sampled, tuple(np.asarray(ax, dtype=float) for ax in axes))


def q_seminorm(f: TestFunction, conj_weight: GridFunction, m: int) -> SeminormReport:
    """Conjugate-weight seminorm ``sup_{|a| <= m} sup_x |D^a f(x)| e^{phi*(x)}``.

    ``conj_weight`` is the grid of ``phi*`` values on the x-axes (see
    :func:`conjugate_weight`); its axes define the sup grid.
    """
    if m < 0:
        raise ValueError("derivative order m must be >= 0")
    dim = f.dim
    if len(conj_weight.axes) != dim:
        raise ValueError(f"conjugate weight dim {len(conj_weight.axes)} does not "
                         f"match function dim {dim}")
    axes = conj_weight.axes
    ew = np.exp(conj_weight.values)
    line = _derivative_lines(f, axes)

    value = -math.inf
    witness: dict = {}
    best_idx: tuple[int, ...] = ()
    best_obj = None
    for order in range(m + 1):
        for alpha in multi_indices_of_order(dim, order):
            absdf = _outer([line(j, alpha[j]) for j in range(dim)])
            obj = np.where(absdf == 0.0, 0.0, absdf * ew)
            flat = int(np.argmax(obj))
            idx = np.unravel_index(flat, obj.shape)
            cand = float(obj[idx])
            if cand > value:
                value = cand
                witness = {"x": tuple(float(axes[j][idx[j]]) for j in range(dim)),
                           "alpha": alpha.parts}
                best_idx = tuple(idx)
                best_obj = obj
    labels = [f"x{j + 1}" for j in range(dim)]
    faces = _boundary_faces(best_idx, [ax.size for ax in axes], labels)
    boundary_max = float(np.max(best_obj[_boundary_mask(best_obj.shape)]))
    return SeminormReport(name="q", value=value, witness=witness,
                          saturated=bool(faces), saturated_faces=faces,
                          stabilized=boundary_max <= 1e-3 * max(value, 1e-300),
                          shell_maxima=(), truncation={"boundary_max": boundary_max})


# ---------------------------------------------------------------------------
# Taylor extension


@dataclass(frozen=True)
class TaylorReport:
    value: complex
    shells: tuple[complex, ...]
    error_estimate: float
    decayed: bool
    order: int


_TAYLOR_DEFAULT = {1: 30, 2: 30, 3: 12}
_TAYLOR_CAP = {1: 40, 2: 34, 3: 16}


def taylor_extend(f: TestFunction, x, y, order: int | None = None) -> TaylorReport:
    """Evaluate the Taylor series of ``f`` at ``x`` displaced by ``y``.

    ``y`` may be complex (the entire extension off the real axis).  The
    report carries per-shell sums: ``error_estimate`` is the largest of
    the last two shell magnitudes, and ``decayed`` says the tail shells
    became negligible against the total.
    """
    dim = f.dim
    x_arr = np.atleast_1d(np.asarray(x, dtype=float))
    y_arr = np.atleast_1d(np.asarray(y))
    if x_arr.shape != (dim,) or y_arr.shape != (dim,):
        raise ValueError(f"base point and displacement must have {dim} coordinates")
    if order is None:
        order = _TAYLOR_DEFAULT[dim]
    if order < 1:
        raise ValueError("Taylor order must be >= 1")
    if order > _TAYLOR_CAP[dim]:
        raise ValueError(f"Taylor order {order} exceeds the dim-{dim} cap "
                         f"{_TAYLOR_CAP[dim]} (factorial cancellation dominates beyond)")
    shells: list[complex] = []
    for s in range(order + 1):
        terms = []
        for alpha in multi_indices_of_order(dim, s):
            df = f.derivative(alpha)(x_arr if dim > 1 else x_arr[0])
            mono = 1.0 + 0.0j
            for j in range(dim):
                mono *= y_arr[j] ** alpha[j]
            terms.append(df * mono / alpha.factorial)
        re = math.fsum(t.real if isinstance(t, complex) else float(t) for t in terms)
        im = math.fsum(t.imag if isinstance(t, complex) else 0.0 for t in terms)
        shells.append(complex(re, im))
    total = complex(math.fsum(s.real for s in shells), math.fsum(s.imag for s in shells))
    err = max(abs(shells[-1]), abs(shells[-2]))
    decayed = err <= 1e-8 * max(1.0, abs(total))
    return TaylorReport(value=total, shells=tuple(shells), error_estimate=err,
                        decayed=decayed, order=order)


# ---------------------------------------------------------------------------
# chain constants and verification


def log_linear_constant(family: WeightFamily, k: int, A: float,
                        config: SearchConfig = DEFAULT_SEARCH) -> float:
    """The constant ``sup_x (psi_k(x) + A sum x_j - psi_{k+1}(x))``.

    ``psi_k`` is the log substitution of the k-th weight.  The sup runs
    over all of R^n; for weights vanishing at the origin and A = 0 it is
    approached as x -> -inf, which the search floor handles.
    """
    lo = family.member(k)
    hi = family.member(k + 1)
    dim = family.dim

    def objective(t: np.ndarray) -> float:
        s = np.empty_like(t)
        for j in range(dim):
            if t[j] > 709.0:
                return -math.inf
            s[j] = math.exp(t[j])
        lo_v = float(lo(s if dim > 1 else s[0]))
        hi_v = float(hi(s if dim > 1 else s[0]))
        if not (math.isfinite(lo_v) and math.isfinite(hi_v)):
            return -math.inf
        return lo_v + A * math.fsum(t) - hi_v

    return maximize_concave(objective, dim, config=config).value


def series_ratio_sum(table_lo: ConjugateTable, table_hi: ConjugateTable) -> tuple[float, bool]:
    """``sum_alpha exp(psi*_hi(alpha) - psi*_lo(alpha))`` over the table.

    Shell sums decay geometrically for dilation-type families, so the
    truncated total is topped up with the geometric tail estimate
    ``last * r / (1 - r)`` when the last shell ratio r is safely below 1;
    the decay flag records whether that tail was negligible.
    """
    if table_lo.dim != table_hi.dim:
        raise ValueError("tables have different dimensions")
    bound = min(table_lo.bound, table_hi.bound)
    shell_sums: list[float] = []
    for order in range(bound + 1):
        shell_sums.append(math.fsum(
            math.exp(table_hi.value(a) - table_lo.value(a))
            for a in multi_indices_of_order(table_lo.dim, order)))
    total = math.fsum(shell_sums)
    tail = math.inf
    if len(shell_sums) >= 2 and shell_sums[-2] > 0.0:
        r = shell_sums[-1] / shell_sums[-2]
        if r < 0.9:
            tail = shell_sums[-1] * r / (1.0 - r)
    decayed = tail <= 1e-9 * max(total, 1e-300)
    if decayed:
        total += tail
    return total, decayed


@dataclass(frozen=True)
class BoundCheck:
    """One verified inequality: observed LHS against the claimed RHS."""

    label: str
    lhs: float
    rhs: float
    constants: dict

    @property
    def margin(self) -> float:
        return self.rhs - self.lhs

    @property
    def passed(self) -> bool:
        if not math.isfinite(self.rhs):
            return self.lhs <= self.rhs
        return self.lhs <= self.rhs + 1e-8 * max(1.0, abs(self.rhs))

    def line(self) -> str:
        return (f"{self.label}: lhs {self.lhs:.6g} <= rhs {self.rhs:.6g} "
                f"[{'ok' if self.passed else 'FAIL'}]")


@dataclass(frozen=True)
class EmbeddingChainReport:
    checks: tuple[BoundCheck, ...]
    seminorms: dict

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def lines(self) -> list[str]:
        return [c.line() for c in self.checks]


def verify_embedding_chain(f: TestFunction, family: WeightFamily, nu: int, m: int,
                           tables: dict[int, ConjugateTable] | None = None,
                           grid: ComplexGrid | None = None,
                           axes: Sequence[np.ndarray] | None = None,
                           sigma: float | None = None,
                           config: SearchConfig = DEFAULT_SEARCH) -> EmbeddingChainReport:
    """Verify the strip/derivative seminorm chain for one (f, nu, m).

    Three checks, each with every constant estimated from the family:

    * derivative bound: ``rho_{m,nu+1}(f) <= e^C * p_{nu,m}(f)`` with C the
      family's log-gap constant at (nu, A=m);
    * strip bound: ``p_{nu+3,m}(f) <= B * e^{C1} * e^K * rho_{m,nu}(f)``
      with B the lattice ratio series of nu vs nu+1, C1 the log-linear
      constant at (nu+1, A=m), K the unit-shift constant at nu+2;
    * lattice gap: ``psi*_nu(a) - psi*_{nu+1}(a) >= |a| ln sigma - gamma``
      for every table index (the dilation condition pushed through the
      conjugate).
    """
    dim = family.dim
    if tables is None:
        tables = {}
    bound = default_lattice_bound(dim)
    for k in (nu, nu + 1):
        if k not in tables:
            tables[k] = lattice_conjugate_table(family.member(k), bound, dim=dim,
                                                config=config)
    checks: list[BoundCheck] = []

    def _log(v: float) -> float:
        return math.log(v) if v > 0.0 else -math.inf

    # Both bounds compare in log scale: the chain constants (e^K in
    # particular) overflow floats for exponential families while the
    # inequality itself is perfectly healthy.
    rho_hi = rho_seminorm(f, tables[nu + 1], m, axes=axes)
    p_lo = p_seminorm(f, family.member(nu), m, grid=grid)
    c_hat = estimate_condition_constant(family, "i0", nu, A=float(m)).value
    checks.append(BoundCheck(
        label=f"derivative bound from strip growth (nu={nu}, m={m}, log scale)",
        lhs=_log(rho_hi.value), rhs=c_hat + _log(p_lo.value),
        constants={"C": c_hat, "rho": rho_hi.value, "p": p_lo.value}))

    rho_lo = rho_seminorm(f, tables[nu], m, axes=axes)
    p_hi = p_seminorm(f, family.member(nu + 3), m, grid=grid)
    b_hat, b_decayed = series_ratio_sum(tables[nu], tables[nu + 1])
    c1_hat = log_linear_constant(family, nu + 1, float(m), config=config)
    k_hat = estimate_condition_constant(family, "i2", nu + 2).value
    checks.append(BoundCheck(
        label=f"strip growth from derivative decay (nu={nu}, m={m}, log scale)",
        lhs=_log(p_hi.value),
        rhs=_log(b_hat) + c1_hat + k_hat + _log(rho_lo.value),
        constants={"B": b_hat, "B_series_decayed": b_decayed,
                   "C1": c1_hat, "K": k_hat, "p": p_hi.value, "rho": rho_lo.value}))

    if sigma is None and family.descriptor is not None:
        sigma = float(family.descriptor.get("base", 0)) or None
    if sigma is not None:
        gamma_hat = estimate_condition_constant(family, "i1", nu, sigma=sigma).value
        worst = math.inf
        worst_alpha: tuple[int, ...] = ()
        for order in range(bound + 1):
            for alpha in multi_indices_of_order(dim, order):
                margin = (tables[nu].value(alpha) - tables[nu + 1].value(alpha)
                          - order * math.log(sigma) + gamma_hat)
                if margin < worst:
                    worst, worst_alpha = margin, alpha.parts
        checks.append(BoundCheck(
            label=f"conjugate gap from dilation (nu={nu}, sigma={sigma:g})",
            lhs=-worst, rhs=0.0,
            constants={"gamma": gamma_hat, "worst_alpha": worst_alpha}))

    return EmbeddingChainReport(checks=tuple(checks),
                                seminorms={"rho_lo": rho_lo, "rho_hi": rho_hi,
                                           "p_lo": p_lo, "p_hi": p_hi})


@dataclass(frozen=True)
class Theorem4Report:
    direct: BoundCheck
    reverse_ratio: float
    g_report: SeminormReport
    q_report: SeminormReport
    q_shifted_report: SeminormReport

    @property
    def passed(self) -> bool:
        return self.direct.passed and math.isfinite(self.reverse_ratio)

    def lines(self) -> list[str]:
        return [self.direct.line(),
                f"reverse ratio q_(m,nu+4)/G: {self.reverse_ratio:.6g} (finite: "
                f"{math.isfinite(self.reverse_ratio)})"]


def verify_theorem4_equivalence(f: TestFunction, family: WeightFamily, nu: int, m: int,
                                table: ConjugateTable | None = None,
                                axes: Sequence[np.ndarray] | None = None,
                                config: SearchConfig = DEFAULT_SEARCH) -> Theorem4Report:
    """Moment functional vs conjugate-weight seminorm equivalence.

    The sharp direction ``G_{m,nu}(f) <= q_{m,nu}(f)`` is asserted (no
    constant); the reverse direction holds with an unpinned constant four
    indices up, so only the ratio ``q_{m,nu+4}(f) / G_{m,nu}(f)`` is
    reported for finiteness.
    """
    dim = family.dim
    if axes is None:
        axes = default_real_axes(dim)
    if table is None:
        table = lattice_conjugate_table(family.member(nu), default_lattice_bound(dim),
                                        dim=dim, config=config)
    g_rep = g_seminorm(f, table, m, axes=axes)
    q_rep = q_seminorm(f, conjugate_weight(family.member(nu), axes), m)
    q4_rep = q_seminorm(f, conjugate_weight(family.member(nu + 4), axes), m)
    direct = BoundCheck(label=f"moment functional vs conjugate weight (nu={nu}, m={m})",
                        lhs=g_rep.value, rhs=q_rep.value, constants={})
    ratio = q4_rep.value / max(g_rep.value, 1e-300)
    return Theorem4Report(direct=direct, reverse_ratio=ratio, g_report=g_rep,
                          q_report=q_rep, q_shifted_report=q4_rep)


@dataclass(frozen=True)
class SubadditivityCheck:
    min_margin: float
    witness: tuple[tuple[int, ...], tuple[int, ...]]
    l_hat: float

    @property
    def passed(self) -> bool:
        return self.min_margin >= -1e-8


def lattice_subadditivity(table_lo: ConjugateTable, table_hi: ConjugateTable,
                          l_hat: float) -> SubadditivityCheck:
    """``psi*_hi(a + b) <= psi*_lo(a) + psi*_lo(b) + l`` over all table pairs.

    ``l_hat`` is the doubling-sum constant of the underlying weights (the
    i4 estimate).  The minimum margin over pairs with ``|a| + |b|`` inside
    the table bound is reported.
    """
    if table_lo.dim != table_hi.dim:
        raise ValueError("tables have different dimensions")
    dim = table_lo.dim
    bound = min(table_lo.bound, table_hi.bound)
    worst = math.inf
    witness = ((), ())
    for sa in range(bound + 1):
        for a in multi_indices_of_order(dim, sa):
            for sb in range(bound - sa + 1):
                for b in multi_indices_of_order(dim, sb):
                    margin = (table_lo.value(a) + table_lo.value(b) + l_hat
                              - table_hi.value(a + b))
                    if margin < worst:
                        worst = margin
                        witness = (a.parts, b.parts)
    return SubadditivityCheck(min_margin=worst, witness=witness, l_hat=l_hat)


@dataclass(frozen=True)
class SandwichCheck:
    t: tuple[float, ...]
    lower: float
    value: float
    upper: float

    @property
    def passed(self) -> bool:
        scale = max(1.0, abs(self.lower), abs(self.upper))
        return (self.lower - 1e-6 * scale <= self.value
                <= self.upper + 1e-6 * scale)


def hspace_sandwich(family: WeightFamily, nu: int, ts: Sequence[float],
                    config: SearchConfig = DEFAULT_SEARCH) -> list[SandwichCheck]:
    """Two-sided bound on the biconjugate in logarithmic coordinates.

    At sample points t > 0 (1-D families) the double conjugate satisfies
    ``phi_nu(t) <= (psi*_nu)*(ln(1+t)) <= phi_{nu+1}(t) + K_nu`` with K the
    unit-shift constant.  The middle term is a nested optimization: the
    outer sup over xi >= 0 of ``<r, xi> - psi*_nu(xi)``, the inner value a
    discrete log conjugate per xi.
    """
    if family.dim != 1:
        raise ValueError("the sandwich check is implemented for 1-D families")
    lo = family.member(nu)
    hi = family.member(nu + 1)
    k_hat = estimate_condition_constant(family, "i2", nu).value
    out = []
    for t in ts:
        if t <= 0:
            raise ValueError("sample points must be positive")
        r = math.log(1.0 + t)

        def objective(xi: np.ndarray) -> float:
            inner = discrete_log_conjugate(lo, (float(xi[0]),), config=config)
            if not inner.is_finite:
                return -math.inf
            return r * float(xi[0]) - inner.value

        val = maximize_concave(objective, 1, lower=(0.0,), config=config).value
        out.append(SandwichCheck(t=(t,), lower=float(lo(t)), value=val,
                                 upper=float(hi(t)) + k_hat))
    return out


def stirling_binomial_check(limit: int = 60) -> tuple[bool, float, tuple[int, int]]:
    """``(m1+m2)! <= e^{m1+m2} m1! m2!`` for all pairs up to the limit.

    Equivalent to ``C(m1+m2, m1) <= e^{m1+m2}``; binomials are exact
    integers, so the margin is computed in logs without rounding concerns.
    """
    worst = math.inf
    witness = (0, 0)
    for m1 in range(limit + 1):
        for m2 in range(limit - m1 + 1):
            margin = (m1 + m2) - math.log(math.comb(m1 + m2, m1))
            if margin < worst:
                worst = margin
                witness = (m1, m2)
    return worst >= 0.0, worst, witness


@dataclass(frozen=True)
class Inequality3Report:
    eps: float
    constant: float
    witness_alpha: tuple[int, ...]
    decayed: bool
    shell_maxima: tuple[float, ...]


def derivative_factorial_decay(f: TestFunction, eps: float,
                               axes: Sequence[np.ndarray] | None = None,
                               max_order: int | None = None) -> Inequality3Report:
    """The constant ``c_eps = sup_alpha sup_x |D^a f(x)| / (eps^|a| a!)``.

    Finite for every eps > 0 when derivatives decay factorially; the decay
    flag asks the last shells to be negligible against the max.
    """
    if eps <= 0:
        raise ValueError("eps must be positive")
    dim = f.dim
    if axes is None:
        axes = default_real_axes(dim)
    if max_order is None:
        max_order = {1: 36, 2: 16, 3: 10}[dim]
    line = _derivative_lines(f, axes)
    best = -math.inf
    witness: tuple[int, ...] = ()
    shells: list[float] = []
    log_eps = math.log(eps)
    for order in range(max_order + 1):
        shell_best = 0.0
        for alpha in multi_indices_of_order(dim, order):
            sup = math.prod(float(np.max(line(j, alpha[j]))) for j in range(dim))
            cand = sup * math.exp(-order * log_eps - alpha.log_factorial)
            shell_best = max(shell_best, cand)
            if cand > best:
                best = cand
                witness = alpha.parts
        shells.append(shell_best)
    return Inequality3Report(eps=eps, constant=best, witness_alpha=witness,
                             decayed=_shells_stabilized(shells, best),
                             shell_maxima=tuple(shells))
