"""Conjugation of weights through the exponential substitution.

For a weight ``g`` on the closed positive orthant, the log substitution
``g[e](t) = g(exp(t_1), ..., exp(t_n))`` turns multiplicative structure
into additive structure; its conjugate

    (g[e])*(x) = sup_t (<x, t> - g[e](t))

is finite on the orthant for superlinear ``g`` and is +infinity as soon
as one dual coordinate is negative (the objective runs away along that
coordinate's tail).  This module computes these suprema by bracketed
golden-section search, tabulates them on the integer lattice, feeds the
tables into factorial-weighted series, and evaluates the duality gap

    (u[e])*(x) + (u*[e])*(x) - sum_{x_j != 0} (x_j ln x_j - x_j),

which vanishes for convex smooth weights and is <= 0 in general.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .grid import ExtendedReal, POS_INF, MultiIndex, multi_indices_of_order
from .search import DEFAULT_SEARCH, MaxResult, SearchConfig, maximize_concave

__all__ = [
    "log_substitute",
    "discrete_log_conjugate",
    "ConjugateTable",
    "lattice_conjugate_table",
    "SeriesReport",
    "series_partial_sums",
    "pointwise_conjugate",
    "SeparableWeight",
    "duality_gap",
]


def _weight_dim(g, x=None) -> int:
    dim = getattr(g, "dim", None)
    if dim is None:
        if x is None:
            raise ValueError("weight has no dim attribute and no point was supplied")
        dim = np.asarray(x, dtype=float).ravel().size
    return int(dim)


def log_substitute(g, t) -> float:
    """Evaluate ``g(exp(t))`` strictly: overflow raises with the coordinate."""
    t_arr = np.asarray(t, dtype=float).ravel()
    s = np.empty_like(t_arr)
    for j, tj in enumerate(t_arr):
        try:
            s[j] = math.exp(tj)
        except OverflowError:
            raise ValueError(
                f"exp overflow in log substitution at coordinate {j}: t_{j} = {tj!r}") from None
    return float(g(s if t_arr.size > 1 else s[0]))


def _log_objective(g, x_arr: np.ndarray) -> Callable[[np.ndarray], float]:
    """Guarded ``t -> <x,t> - g(exp t)`` (overflow reads as -infinity)."""

    def fun(t: np.ndarray) -> float:
        s = np.empty_like(t)
        for j in range(t.size):
            tj = t[j]
            if tj > 709.0:
                return -math.inf
            s[j] = math.exp(tj)
        try:
            gv = float(g(s if t.size > 1 else s[0]))
        except OverflowError:
            return -math.inf
        if not math.isfinite(gv):
            return -math.inf
        return math.fsum(x_arr[j] * t[j] for j in range(t.size)) - gv

    return fun


def discrete_log_conjugate(g, x, config: SearchConfig = DEFAULT_SEARCH,
                           warm_start: Sequence[float] | None = None) -> ExtendedReal:
    """``(g[e])*(x)`` for a superlinear weight ``g``.

    Negative dual coordinates give +infinity immediately.  Zero dual
    coordinates ride the monotone tail of ``-g[e]`` and saturate at the
    search floor, with the flattening verified by extrapolation.
    """
    dim = _weight_dim(g, x)
    x_arr = np.atleast_1d(np.asarray(x, dtype=float))
    if x_arr.shape != (dim,):
        raise ValueError(f"dual point must have {dim} coordinates")
    if np.any(x_arr < 0):
        return POS_INF
    result = maximize_concave(_log_objective(g, x_arr), dim,
                              config=config, warm_start=warm_start)
    return ExtendedReal(result.value)


def _solve_log_conjugate(g, x, config, warm_start) -> MaxResult:
    dim = _weight_dim(g, x)
    x_arr = np.atleast_1d(np.asarray(x, dtype=float))
    return maximize_concave(_log_objective(g, x_arr), dim,
                            config=config, warm_start=warm_start)


@dataclass(frozen=True)
class ConjugateTable:
    """Lattice table of ``(g[e])*`` values on ``|alpha| <= bound``.

    ``growth_ok`` records the finite-lattice surrogate of the superlinear
    growth property: along each coordinate ray the increments are
    nondecreasing and value/|alpha| is nondecreasing from order 1 on.
    """

    dim: int
    bound: int
    values: dict[tuple[int, ...], float]
    growth_ok: bool = True
    growth_witness: str | None = None

    def value(self, alpha) -> float:
        key = tuple(alpha.parts) if isinstance(alpha, MultiIndex) else tuple(int(a) for a in alpha)
        return self.values[key]

    def __contains__(self, alpha) -> bool:
        key = tuple(alpha.parts) if isinstance(alpha, MultiIndex) else tuple(int(a) for a in alpha)
        return key in self.values

    def shell(self, order: int) -> list[tuple[tuple[int, ...], float]]:
        return [(a.parts, self.values[a.parts]) for a in multi_indices_of_order(self.dim, order)]


def _check_ray_growth(values: dict, dim: int, bound: int, tol: float = 1e-8):
    """Remark-2 style growth along coordinate rays (see module docstring)."""
    for j in range(dim):
        ray = []
        for k in range(bound + 1):
            key = tuple(k if i == j else 0 for i in range(dim))
            ray.append(values[key])
        for k in range(1, len(ray) - 1):
            if (ray[k + 1] - ray[k]) < (ray[k] - ray[k - 1]) - tol:
                return False, f"increments decrease along axis {j} at order {k}"
        ratios = [ray[k] / k for k in range(1, len(ray))]
        for k in range(1, len(ratios)):
            if ratios[k] < ratios[k - 1] - tol:
                return False, f"value/order ratio decreases along axis {j} at order {k + 1}"
    return True, None


def lattice_conjugate_table(g, bound: int, dim: int | None = None,
                            config: SearchConfig = DEFAULT_SEARCH) -> ConjugateTable:
    """Tabulate ``(g[e])*(alpha)`` for all ``|alpha| <= bound``.

    ``dim`` may be omitted when the weight carries a ``dim`` attribute.
    Entries are solved in graded lexicographic order, warm-starting each
    from an already-solved neighbor one step down.
    """
    if bound < 0:
        raise ValueError("bound must be >= 0")
    if dim is None:
        dim = _weight_dim(g)
    values: dict[tuple[int, ...], float] = {}
    args: dict[tuple[int, ...], np.ndarray] = {}
    for order in range(bound + 1):
        for alpha in multi_indices_of_order(dim, order):
            key = alpha.parts
            warm = None
            for j in range(dim):
                if key[j] > 0:
                    down = tuple(key[i] - (1 if i == j else 0) for i in range(dim))
                    if down in args:
                        warm = args[down]
                        break
            res = _solve_log_conjugate(g, np.array(key, dtype=float), config, warm)
            values[key] = res.value
            args[key] = res.point
    ok, witness = _check_ray_growth(values, dim, bound)
    return ConjugateTable(dim=dim, bound=bound, values=values,
                          growth_ok=ok, growth_witness=witness)


@dataclass(frozen=True)
class SeriesReport:
    """Shell-by-shell partial sums of a factorial-weighted lattice series."""

    b: float
    mode: str
    partial_sums: list[float]
    shell_increments: list[float]
    converged: bool
    diverging: bool

    @property
    def total(self) -> float:
        return self.partial_sums[-1]


def series_partial_sums(g, b: float, mode: str = "factorial", terms: int = 50,
                        table: ConjugateTable | None = None, dim: int | None = None,
                        config: SearchConfig = DEFAULT_SEARCH) -> SeriesReport:
    """Partial sums of ``sum_j exp((g[e])*(j)) / (b^|j| w(j))`` over shells.

    ``mode='factorial'`` weights with ``w(j) = j!``; ``mode='modulus-factorial'``
    with ``w(j) = |j|!``.  Terms are accumulated in log space, so very large
    table values degrade into +inf increments (and a divergence flag) rather
    than overflow.  Convergence is declared when the last 10 shell increments
    are each below 1e-14 of the running sum.
    """
    if b <= 0:
        raise ValueError("series base b must be positive")
    if mode not in ("factorial", "modulus-factorial"):
        raise ValueError(f"unknown series mode {mode!r}")
    if terms < 1:
        raise ValueError("terms must be >= 1")
    if table is not None:
        dim = table.dim
    elif dim is None:
        dim = _weight_dim(g)
    if table is None:
        table = lattice_conjugate_table(g, terms, dim=dim, config=config)
    if table.bound < terms:
        raise ValueError(f"table bound {table.bound} smaller than requested terms {terms}")
    log_b = math.log(b)
    increments: list[float] = []
    partial: list[float] = []
    all_terms: list[float] = []
    for s in range(terms + 1):
        shell_terms = []
        for alpha in multi_indices_of_order(dim, s):
            log_w = math.lgamma(s + 1) if mode == "modulus-factorial" else alpha.log_factorial
            log_term = table.value(alpha) - s * log_b - log_w
            shell_terms.append(math.exp(log_term) if log_term < 709.0 else math.inf)
        inc = math.fsum(shell_terms)
        increments.append(inc)
        all_terms.extend(shell_terms)
        partial.append(math.fsum(all_terms))
    total = partial[-1]
    tail = increments[-10:]
    converged = len(increments) >= 10 and all(t <= 1e-14 * max(total, 1e-300) for t in tail)
    diverging = False
    run = 0
    for k in range(1, len(increments)):
        run = run + 1 if increments[k] > increments[k - 1] else 0
        if run >= 10:
            diverging = True
            break
    return SeriesReport(b=b, mode=mode, partial_sums=partial,
                        shell_increments=increments, converged=converged,
                        diverging=diverging)


def pointwise_conjugate(u, s, config: SearchConfig = DEFAULT_SEARCH,
                        warm_start: Sequence[float] | None = None) -> float:
    """``u*(s) = sup_y (<s,y> - u(y))`` by adaptive localization.

    The expanding coarse scan is a discrete conjugate on successively
    larger grids; golden-section sweeps then polish the node to ~1e-10.
    """
    dim = _weight_dim(u, s)
    s_arr = np.atleast_1d(np.asarray(s, dtype=float))

    def fun(y: np.ndarray) -> float:
        uv = float(u(y if dim > 1 else y[0]))
        if not math.isfinite(uv):
            return -math.inf
        return math.fsum(s_arr[j] * y[j] for j in range(dim)) - uv

    return maximize_concave(fun, dim, config=config, warm_start=warm_start).value


class _ConjugateWeight:
    """``u*`` wrapped as a weight (callable with a ``dim``), warm-started."""

    def __init__(self, u, config: SearchConfig, dim: int | None = None):
        self.dim = _weight_dim(u) if dim is None else int(dim)
        self._u = u
        self._config = config
        self._last: np.ndarray | None = None

    def __call__(self, s) -> float:
        s_arr = np.atleast_1d(np.asarray(s, dtype=float))
        res_warm = self._last

        def fun(y: np.ndarray) -> float:
            uv = float(self._u(y if self.dim > 1 else y[0]))
            if not math.isfinite(uv):
                return -math.inf
            return math.fsum(s_arr[j] * y[j] for j in range(self.dim)) - uv

        result = maximize_concave(fun, self.dim, config=self._config, warm_start=res_warm)
        self._last = result.point
        return result.value


class SeparableWeight:
    """Coordinate sum ``u(x) = sum_j u_j(x_j)`` of scalar weights.

    Every operation in this module distributes over such sums: the sup in
    ``(u[e])*`` splits per coordinate, ``u*(s) = sum_j u_j*(s_j)``, and the
    duality anchor is already a coordinate sum.  Tagging a weight as
    separable therefore turns the n-dimensional duality gap into a sum of
    exact one-dimensional gaps, with no tolerance lost.
    """

    def __init__(self, components: Sequence[Callable[[float], float]]):
        self.components = tuple(components)
        if not 1 <= len(self.components) <= 3:
            raise ValueError("a separable weight needs 1..3 components")
        self.dim = len(self.components)

    def __call__(self, x) -> float:
        x_arr = np.atleast_1d(np.asarray(x, dtype=float))
        if x_arr.shape != (self.dim,):
            raise ValueError(f"point must have {self.dim} coordinates")
        return math.fsum(c(float(x_arr[j])) for j, c in enumerate(self.components))


def duality_gap(u, x, config: SearchConfig = DEFAULT_SEARCH) -> float:
    """``(u[e])*(x) + (u*[e])*(x) - sum_{x_j != 0}(x_j ln x_j - x_j)``.

    Zero at every orthant point for convex smooth weights; <= 0 otherwise.
    ``x`` must lie in the closed positive orthant.  Weights exposing a
    ``components`` tuple (see :class:`SeparableWeight`) decompose exactly
    into per-coordinate gaps, skipping the nested multi-dimensional search.
    """
    dim = _weight_dim(u, x)
    x_arr = np.atleast_1d(np.asarray(x, dtype=float))
    if x_arr.shape != (dim,):
        raise ValueError(f"dual point must have {dim} coordinates")
    if np.any(x_arr < 0):
        raise ValueError("duality gap is defined on the closed positive orthant")
    components = getattr(u, "components", None)
    if components is not None and dim > 1:
        if len(components) != dim:
            raise ValueError("separable weight components do not match the dimension")
        return math.fsum(duality_gap(components[j], (x_arr[j],), config=config)
                         for j in range(dim))
    first = discrete_log_conjugate(u, x_arr, config=config).value
    second = discrete_log_conjugate(_ConjugateWeight(u, config, dim=dim), x_arr,
                                    config=config).value
    anchor = math.fsum(xj * math.log(xj) - xj for xj in x_arr if xj > 0)
    return first + second - anchor
