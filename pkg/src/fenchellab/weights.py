"""Weight functions, indexed weight families, and their growth conditions.

A *weight* here is a continuous function on R^n, symmetric under
coordinatewise absolute value, nondecreasing on the positive orthant and
superlinear at infinity.  Families ``{phi_nu}`` of such weights are
compared member to member through five one-sided conditions, each with a
sharp constant this module estimates as a grid supremum of LHS - RHS:

===========  ==================================================================
condition    inequality (for every x in the probe region)
===========  ==================================================================
i0 (A)       phi_nu(x) + A ln(1 + ||x||)  <=  phi_{nu+1}(x) + C
i1 (sigma)   phi_nu(sigma x)              <=  phi_{nu+1}(x) + C
i2           phi_nu(x + xi), xi in [0,1]^n <= phi_{nu+1}(x) + C
i3           phi_nu(2x)                   <=  phi_{nu+1}(x) + C
i4           2 phi_nu(x)                  <=  phi_{nu+1}(x) + C
===========  ==================================================================

Estimates come with a domain-doubling diagnostic: the same supremum on
[0, 2R]^n and [0, 4R]^n, flagged as possibly unbounded when the last
doubling still grows the value by more than 10%.
"""

from __future__ import annotations

import json
import math
import threading
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

__all__ = [
    "WeightFunction",
    "WeightFamily",
    "make_radial_family",
    "ClassAReport",
    "check_class_A",
    "ConstantEstimate",
    "estimate_condition_constant",
    "PROFILES",
    "family_from_json",
    "family_to_json",
]

CONDITIONS = ("i0", "i1", "i2", "i3", "i4")


class WeightFunction:
    """A weight with its evaluator and light metadata.

    ``evaluator`` maps an ndarray of points with shape ``(..., dim)`` to an
    ndarray of shape ``(...,)``.  Calling the weight accepts scalars (1-D),
    single points, or stacked points.  Invariants (symmetry, monotonicity,
    superlinearity) are *not* enforced at construction -- use
    :func:`check_class_A` to audit them; factories in this module only
    build compliant weights.
    """

    def __init__(self, evaluator: Callable[[np.ndarray], np.ndarray], dim: int,
                 name: str = "", form: str = "custom", smoothness: str = "unknown",
                 convex: bool | None = None):
        if dim < 1 or dim > 3:
            raise ValueError(f"weight dimension must be 1..3, got {dim}")
        self.evaluator = evaluator
        self.dim = int(dim)
        self.name = name
        self.form = form
        self.smoothness = smoothness
        self.convex = convex

    def __call__(self, x):
        arr = np.asarray(x, dtype=float)
        if self.dim == 1:
            pts = arr.reshape(arr.shape + (1,))
        else:
            if arr.ndim == 0 or arr.shape[-1] != self.dim:
                raise ValueError(f"expected points with last axis {self.dim}")
            pts = arr
        with np.errstate(over="ignore"):
            out = np.asarray(self.evaluator(pts), dtype=float)
        if out.shape != pts.shape[:-1]:
            raise ValueError("weight evaluator returned a misshaped array")
        return float(out) if out.ndim == 0 else out

    def __repr__(self) -> str:
        return f"WeightFunction({self.name or self.form}, dim={self.dim})"


def _norm(pts: np.ndarray) -> np.ndarray:
    return np.sqrt(np.sum(pts * pts, axis=-1))


# Named scalar profiles; Omega must be continuous, nondecreasing on [0, inf)
# with superlinear growth.  "t^p" needs the exponent passed separately.
PROFILES: dict[str, Callable[..., Callable[[np.ndarray], np.ndarray]]] = {
    "t^2": lambda: (lambda t: t * t),
    "t^p": lambda p: (lambda t: np.power(t, p)),
    "exp(t)-1": lambda: (lambda t: np.expm1(t)),
}


@dataclass
class WeightFamily:
    """An indexed family ``nu -> phi_nu`` (indices start at 1).

    Members are built lazily by ``member_factory`` and cached, as are
    condition-constant estimates (guarded by a lock; the cache is
    append-only so re-estimation always reproduces the stored value).
    """

    member_factory: Callable[[int], WeightFunction]
    dim: int
    name: str = ""
    descriptor: dict | None = None
    _members: dict[int, WeightFunction] = field(default_factory=dict, repr=False)
    _constants: dict[tuple, "ConstantEstimate"] = field(default_factory=dict, repr=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    def member(self, nu: int) -> WeightFunction:
        if nu < 1:
            raise ValueError(f"family index must be >= 1, got {nu}")
        with self._lock:
            if nu not in self._members:
                self._members[nu] = self.member_factory(nu)
            return self._members[nu]

    def condition_constant(self, cond: str, nu: int, *, A: float | None = None,
                           sigma: float | None = None, radius: float = 20.0,
                           points: int | None = None) -> "ConstantEstimate":
        key = (cond, nu, A, sigma, radius, points)
        with self._lock:
            if key in self._constants:
                return self._constants[key]
        est = estimate_condition_constant(self, cond, nu, A=A, sigma=sigma,
                                          radius=radius, points=points)
        with self._lock:
            self._constants.setdefault(key, est)
            return self._constants[key]


def make_radial_family(profile: Callable[[np.ndarray], np.ndarray], base: float = 2.0,
                       dim: int = 1, name: str = "", profile_name: str | None = None,
                       convex: bool | None = None, smoothness: str = "C^inf") -> WeightFamily:
    """Build the radial family ``phi_nu(x) = Omega(base^nu * ||x||)``.

    ``profile`` is the scalar ``Omega``, probed for monotonicity on [0, 50]
    at construction.  ``base >= 2`` so the dilation condition i1 holds with
    ``sigma = base`` exactly.
    """
    if base < 2.0:
        raise ValueError(f"family base must be >= 2, got {base}")
    probe = np.linspace(0.0, 50.0, 501)
    vals = np.asarray(profile(probe), dtype=float)
    if np.any(np.diff(vals) < -1e-12 * np.maximum(1.0, np.abs(vals[:-1]))):
        raise ValueError("profile must be nondecreasing on [0, infinity)")

    def factory(nu: int) -> WeightFunction:
        scale = float(base) ** nu

        def evaluator(pts: np.ndarray) -> np.ndarray:
            return np.asarray(profile(scale * _norm(pts)), dtype=float)

        return WeightFunction(evaluator, dim, name=f"{name or 'phi'}_{nu}",
                              form="radial", smoothness=smoothness, convex=convex)

    descriptor = None
    if profile_name is not None:
        descriptor = {"profile": profile_name, "base": float(base), "dim": int(dim)}
    return WeightFamily(member_factory=factory, dim=dim, name=name, descriptor=descriptor)


def family_from_json(source) -> WeightFamily:
    """Rebuild a radial family from its JSON description.

    ``source`` may be a dict, a JSON string, or a path to a JSON file with
    fields ``profile`` (one of ``t^2``, ``t^p``, ``exp(t)-1``), ``p`` (for
    ``t^p``), ``base``, and ``dim``.
    """
    if isinstance(source, dict):
        desc = source
    else:
        text = None
        if hasattr(source, "read"):
            text = source.read()
        else:
            s = str(source)
            if s.lstrip().startswith("{"):
                text = s
            else:
                with open(s, "r", encoding="utf-8") as fh:
                    text = fh.read()
        desc = json.loads(text)
    profile_name = desc.get("profile")
    if profile_name not in PROFILES:
        raise ValueError(
            f"unknown profile {profile_name!r}; expected one of {sorted(PROFILES)}")
    base = float(desc.get("base", 2.0))
    dim = int(desc.get("dim", 1))
    if profile_name == "t^p":
        p = desc.get("p")
        if p is None or float(p) <= 1.0:
            raise ValueError("profile t^p needs an exponent p > 1")
        profile = PROFILES["t^p"](float(p))
        fam = make_radial_family(profile, base=base, dim=dim, profile_name=profile_name,
                                 convex=True, name=f"t^{p}")
        fam.descriptor["p"] = float(p)
        return fam
    profile = PROFILES[profile_name]()
    return make_radial_family(profile, base=base, dim=dim, profile_name=profile_name,
                              convex=True, name=profile_name)


def family_to_json(family: WeightFamily, path=None) -> str:
    """Serialize a named-profile radial family; custom families refuse."""
    if not family.descriptor:
        raise ValueError("family with a custom profile cannot be serialized")
    text = json.dumps(family.descriptor, sort_keys=True)
    if path is not None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    return text


# ---------------------------------------------------------------------------
# class-A audit


@dataclass(frozen=True)
class ClassAReport:
    symmetric: bool
    monotone: bool
    superlinear_trend: bool
    growth_ratios: tuple[float, ...]
    witnesses: dict

    @property
    def passed(self) -> bool:
        return self.symmetric and self.monotone and self.superlinear_trend


def check_class_A(g: WeightFunction, radius: float = 10.0, points: int | None = None,
                  seed: int = 0) -> ClassAReport:
    """Audit the class-A properties of a weight on ``[-R, R]^n``.

    Checks symmetry under coordinatewise absolute value at seeded random
    points (relative tolerance 1e-12), monotonicity along every axis of an
    orthant grid, and strict growth of ``g(x)/||x||`` at radii R/4, R/2, R.
    """
    if radius < 10.0:
        raise ValueError(f"class-A probe radius must be >= 10, got {radius}")
    dim = g.dim
    if points is None:
        points = {1: 201, 2: 61, 3: 21}[dim]
    witnesses: dict = {}

    rng = np.random.default_rng(seed)
    pts = rng.uniform(-radius, radius, size=(100, dim))
    sym_vals = g(pts if dim > 1 else pts[:, 0])
    abs_vals = g(np.abs(pts) if dim > 1 else np.abs(pts[:, 0]))
    sym_err = np.abs(sym_vals - abs_vals) / np.maximum(1.0, np.abs(abs_vals))
    symmetric = bool(np.max(sym_err) <= 1e-12)
    if not symmetric:
        k = int(np.argmax(sym_err))
        witnesses["symmetry"] = tuple(pts[k])

    axes = [np.linspace(0.0, radius, points) for _ in range(dim)]
    mesh = np.meshgrid(*axes, indexing="ij")
    grid_pts = np.stack(mesh, axis=-1)
    vals = g(grid_pts if dim > 1 else grid_pts[..., 0])
    monotone = True
    for j in range(dim):
        d = np.diff(vals, axis=j)
        scale = np.maximum(1.0, np.abs(np.moveaxis(vals, j, -1)[..., :-1]))
        if np.any(np.moveaxis(d, j, -1) < -1e-12 * scale):
            monotone = False
            bad = np.argwhere(np.moveaxis(d, j, -1) < -1e-12 * scale)[0]
            witnesses["monotonicity"] = (j, tuple(int(i) for i in bad))
            break

    diag = np.ones(dim) / math.sqrt(dim)
    ratios = []
    for r in (radius / 4.0, radius / 2.0, radius):
        p = r * diag
        ratios.append(float(g(p if dim > 1 else p[0])) / r)
    superlinear = all(ratios[k + 1] > ratios[k] * (1.0 + 1e-12) for k in range(2))
    if not superlinear:
        witnesses["growth"] = tuple(ratios)
    return ClassAReport(symmetric=symmetric, monotone=monotone,
                        superlinear_trend=superlinear,
                        growth_ratios=tuple(ratios), witnesses=witnesses)


# ---------------------------------------------------------------------------
# condition constants


@dataclass(frozen=True)
class ConstantEstimate:
    """Grid-sup estimate of a condition constant with doubling diagnostics."""

    condition: str
    nu: int
    param: dict
    value: float
    witness: tuple[float, ...]
    radius: float
    points: int
    doubling_values: tuple[float, float, float]
    unbounded: bool


def _condition_gap(cond: str, lo_w: WeightFunction, hi_w: WeightFunction,
                   pts: np.ndarray, A: float | None, sigma: float | None) -> np.ndarray:
    dim = lo_w.dim
    x = pts if dim > 1 else pts[..., 0]
    if cond == "i0":
        return lo_w(x) + A * np.log1p(_norm(pts)) - hi_w(x)
    if cond == "i1":
        return lo_w(sigma * x) - hi_w(x)
    if cond == "i2":
        shifted = pts + 1.0
        return lo_w(shifted if dim > 1 else shifted[..., 0]) - hi_w(x)
    if cond == "i3":
        return lo_w(2.0 * x) - hi_w(x)
    if cond == "i4":
        return 2.0 * lo_w(x) - hi_w(x)
    raise ValueError(f"unknown condition {cond!r}; expected one of {CONDITIONS}")


def estimate_condition_constant(family: WeightFamily, cond: str, nu: int, *,
                                A: float | None = None, sigma: float | None = None,
                                radius: float = 20.0, points: int | None = None) -> ConstantEstimate:
    """Estimate the sharp constant of a family condition as a grid sup.

    The supremum of LHS - RHS is taken over ``[0, R]^n`` (the worst shift
    ``xi = (1, ..., 1)`` is used for i2 -- weights are nondecreasing on the
    orthant).  Diagnostics re-estimate on [0, 2R]^n and [0, 4R]^n with the
    same node count; ``unbounded`` flags a >10% growth on the last doubling.
    """
    if cond not in CONDITIONS:
        raise ValueError(f"unknown condition {cond!r}; expected one of {CONDITIONS}")
    if cond == "i0":
        if A is None or A < 0:
            raise ValueError("condition i0 needs a constant A >= 0")
    elif A is not None:
        raise ValueError(f"condition {cond} takes no A parameter")
    if cond == "i1":
        if sigma is None or sigma <= 1:
            raise ValueError("condition i1 needs a dilation sigma > 1")
    elif sigma is not None:
        raise ValueError(f"condition {cond} takes no sigma parameter")
    dim = family.dim
    if points is None:
        points = {1: 401, 2: 201, 3: 41}[dim]
    lo_w = family.member(nu)
    hi_w = family.member(nu + 1)

    sups: list[float] = []
    witness: tuple[float, ...] = ()
    for k, r in enumerate((radius, 2 * radius, 4 * radius)):
        axes = [np.linspace(0.0, r, points) for _ in range(dim)]
        mesh = np.meshgrid(*axes, indexing="ij")
        pts = np.stack(mesh, axis=-1)
        gap = _condition_gap(cond, lo_w, hi_w, pts, A, sigma)
        flat = int(np.argmax(gap))
        sups.append(float(gap.reshape(-1)[flat]))
        if k == 0:
            idx = np.unravel_index(flat, gap.shape)
            witness = tuple(float(axes[j][idx[j]]) for j in range(dim))
    unbounded = (sups[2] - sups[1]) > 0.1 * max(1.0, abs(sups[1]))
    param = {}
    if A is not None:
        param["A"] = float(A)
    if sigma is not None:
        param["sigma"] = float(sigma)
    return ConstantEstimate(condition=cond, nu=nu, param=param, value=sups[0],
                            witness=witness, radius=radius, points=points,
                            doubling_values=(sups[0], sups[1], sups[2]),
                            unbounded=unbounded)
