"""Analytic test functions: products of polynomial-times-Gaussian factors.

Every function here has the form ``f(x) = prod_j P_j(x_j) exp(-a_j x_j^2)``
with real polynomial factors.  The class is closed under differentiation
(``d/dx [P e^{-ax^2}] = (P' - 2axP) e^{-ax^2}``) and under multiplication
by monomials, entire on C^n, and rapidly decreasing on R^n, which makes
derivatives, complex strip values, and quadrature tail bounds all exact
or explicitly controllable.  Factories cover Gaussians, Hermite functions
(physicists' normalization) and arbitrary polynomial factors, plus JSON
round-tripping for reproducible configs.
"""

from __future__ import annotations

import json
import math
from typing import Iterable, Sequence

import numpy as np
from numpy.polynomial import hermite as nherm
from numpy.polynomial import polynomial as npoly

from .grid import MultiIndex

__all__ = [
    "PolyGaussian1D",
    "TestFunction",
    "gaussian",
    "hermite_gaussian",
    "poly_gaussian",
    "product",
    "zero",
    "test_function_to_json",
    "test_function_from_json",
]


class PolyGaussian1D:
    """One factor ``P(x) exp(-a x^2)`` with ascending-power coefficients."""

    __slots__ = ("coeffs", "a", "_dcache")

    def __init__(self, coeffs: Sequence[float], a: float):
        if a <= 0:
            raise ValueError(f"Gaussian rate a must be positive, got {a}")
        c = np.atleast_1d(np.asarray(coeffs, dtype=float))
        if c.ndim != 1 or c.size == 0:
            raise ValueError("coefficients must form a nonempty 1-D sequence")
        c = np.trim_zeros(c, "b")
        if c.size == 0:
            c = np.zeros(1)
        self.coeffs = c
        self.a = float(a)
        self._dcache: dict[int, "PolyGaussian1D"] = {}

    @property
    def degree(self) -> int:
        return self.coeffs.size - 1

    @property
    def abs_coeff_sum(self) -> float:
        return float(np.sum(np.abs(self.coeffs)))

    def __call__(self, z):
        arr = np.asarray(z)
        vals = npoly.polyval(arr, self.coeffs) * np.exp(-self.a * arr * arr)
        return complex(vals) if arr.ndim == 0 and np.iscomplexobj(arr) else (
            float(vals) if arr.ndim == 0 else vals)

    def derivative(self, order: int = 1) -> "PolyGaussian1D":
        if order < 0:
            raise ValueError("derivative order must be >= 0")
        if order == 0:
            return self
        if order not in self._dcache:
            prev = self.derivative(order - 1)
            c = prev.coeffs
            dc = npoly.polysub(npoly.polyder(c), 2.0 * self.a * npoly.polymulx(c))
            self._dcache[order] = PolyGaussian1D(dc, self.a)
        return self._dcache[order]

    def monomial_multiply(self, k: int) -> "PolyGaussian1D":
        """The factor ``x^k P(x) exp(-a x^2)``."""
        if k < 0:
            raise ValueError("monomial power must be >= 0")
        if k == 0:
            return self
        return PolyGaussian1D(np.concatenate([np.zeros(k), self.coeffs]), self.a)

    def scale(self, s: float) -> "PolyGaussian1D":
        return PolyGaussian1D(s * self.coeffs, self.a)

    def is_zero(self) -> bool:
        return self.coeffs.size == 1 and self.coeffs[0] == 0.0


class TestFunction:
    """A product ``f(x) = prod_j factor_j(x_j)`` of 1-D factors.

    ``descriptor`` keeps the JSON-serializable origin of the function when
    it was built by a factory; derived functions (derivatives, monomial
    multiples) drop it.
    """

    def __init__(self, factors: Sequence[PolyGaussian1D], kind: str = "custom",
                 descriptor: dict | None = None):
        if not 1 <= len(factors) <= 3:
            raise ValueError(f"test functions support dim 1..3, got {len(factors)}")
        self.factors = tuple(factors)
        self.kind = kind
        self.descriptor = descriptor

    @property
    def dim(self) -> int:
        return len(self.factors)

    def __call__(self, z):
        arr = np.asarray(z)
        if self.dim == 1 and (arr.ndim == 0 or arr.shape[-1] != 1):
            pts = arr.reshape(arr.shape + (1,))
        else:
            if arr.ndim == 0 or arr.shape[-1] != self.dim:
                raise ValueError(f"expected points with last axis {self.dim}")
            pts = arr
        vals = np.ones(pts.shape[:-1], dtype=complex if np.iscomplexobj(pts) else float)
        for j, factor in enumerate(self.factors):
            vals = vals * factor(pts[..., j])
        if vals.ndim == 0:
            return complex(vals) if np.iscomplexobj(vals) else float(vals)
        return vals

    def on_grid(self, axes: Sequence[np.ndarray]) -> np.ndarray:
        """Evaluate on the tensor grid of the given (real or complex) axes."""
        if len(axes) != self.dim:
            raise ValueError(f"expected {self.dim} axes, got {len(axes)}")
        out = None
        for j, factor in enumerate(self.factors):
            line = factor(np.asarray(axes[j]))
            shape = [1] * self.dim
            shape[j] = line.size
            line = line.reshape(shape)
            out = line if out is None else out * line
        return out

    def derivative(self, alpha) -> "TestFunction":
        """The exact partial derivative ``D^alpha f`` (again a product)."""
        parts = alpha.parts if isinstance(alpha, MultiIndex) else tuple(alpha)
        if len(parts) != self.dim:
            raise ValueError(f"multi-index must have {self.dim} parts")
        new = [f.derivative(k) for f, k in zip(self.factors, parts)]
        return TestFunction(new, kind=f"{self.kind}-derivative")

    def monomial_multiply(self, beta) -> "TestFunction":
        """The product ``x^beta f(x)``."""
        parts = beta.parts if isinstance(beta, MultiIndex) else tuple(beta)
        if len(parts) != self.dim:
            raise ValueError(f"multi-index must have {self.dim} parts")
        new = [f.monomial_multiply(k) for f, k in zip(self.factors, parts)]
        return TestFunction(new, kind=f"{self.kind}-monomial")

    def __mul__(self, s):
        if not isinstance(s, (int, float)):
            return NotImplemented
        new = (self.factors[0].scale(float(s)),) + self.factors[1:]
        return TestFunction(new, kind=self.kind)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return any(f.is_zero() for f in self.factors)

    @property
    def axis_envelopes(self) -> list[tuple[float, int, float]]:
        """Per-axis ``(sum |coeffs|, degree, a)`` for tail estimates."""
        return [(f.abs_coeff_sum, f.degree, f.a) for f in self.factors]

    def __repr__(self) -> str:
        return f"TestFunction({self.kind}, dim={self.dim})"


def gaussian(a: float = 0.5, dim: int = 1) -> TestFunction:
    """``exp(-a ||x||^2)``."""
    factors = [PolyGaussian1D([1.0], a) for _ in range(dim)]
    return TestFunction(factors, kind="gaussian",
                        descriptor={"kind": "gaussian", "a": float(a), "dim": dim})


def hermite_gaussian(k, a: float = 1.0, dim: int = 1) -> TestFunction:
    """``prod_j H_{k_j}(x_j) exp(-a x_j^2)`` with physicists' Hermite."""
    ks = (k,) * dim if isinstance(k, int) else tuple(int(v) for v in k)
    if len(ks) != dim:
        raise ValueError(f"need {dim} Hermite degrees, got {len(ks)}")
    if any(v < 0 for v in ks):
        raise ValueError("Hermite degrees must be >= 0")
    factors = []
    for kj in ks:
        hcoef = np.zeros(kj + 1)
        hcoef[kj] = 1.0
        factors.append(PolyGaussian1D(nherm.herm2poly(hcoef), a))
    return TestFunction(factors, kind="hermite",
                        descriptor={"kind": "hermite", "k": list(ks), "a": float(a),
                                    "dim": dim})


def poly_gaussian(coeffs, a: float = 1.0, dim: int = 1) -> TestFunction:
    """``prod_j P(x_j) exp(-a x_j^2)`` with the same polynomial per axis,
    or per-axis polynomials when ``coeffs`` is a list of lists."""
    first = coeffs[0] if len(coeffs) > 0 else None
    if isinstance(first, (list, tuple, np.ndarray)):
        per_axis = [np.asarray(c, dtype=float) for c in coeffs]
        if len(per_axis) != dim:
            raise ValueError(f"need {dim} coefficient lists, got {len(per_axis)}")
    else:
        per_axis = [np.asarray(coeffs, dtype=float)] * dim
    factors = [PolyGaussian1D(c, a) for c in per_axis]
    return TestFunction(factors, kind="poly",
                        descriptor={"kind": "poly",
                                    "coeffs": [list(map(float, c)) for c in per_axis],
                                    "a": float(a), "dim": dim})


def product(*functions: TestFunction) -> TestFunction:
    """Concatenate 1-D test functions into a product in higher dimension."""
    factors: list[PolyGaussian1D] = []
    descriptors = []
    for f in functions:
        factors.extend(f.factors)
        descriptors.append(f.descriptor)
    if any(d is None for d in descriptors):
        descriptor = None
    else:
        descriptor = {"kind": "product", "factors": descriptors,
                      "dim": len(factors)}
    return TestFunction(factors, kind="product", descriptor=descriptor)


def zero(dim: int = 1) -> TestFunction:
    """The zero function (identically vanishing polynomial factor)."""
    factors = [PolyGaussian1D([0.0], 1.0)] + [PolyGaussian1D([1.0], 1.0)] * (dim - 1)
    return TestFunction(factors, kind="zero",
                        descriptor={"kind": "zero", "dim": dim})


_KINDS = ("gaussian", "hermite", "poly", "product", "zero")


def test_function_to_json(f: TestFunction, path=None) -> str:
    if f.descriptor is None:
        raise ValueError(
            "this function was derived (differentiated, monomial-multiplied, or "
            "custom) and has no JSON form; serialize its factory inputs instead")
    text = json.dumps(f.descriptor, sort_keys=True)
    if path is not None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    return text


def test_function_from_json(source) -> TestFunction:
    """Rebuild a test function from a dict, JSON string, or file path."""
    if isinstance(source, dict):
        desc = source
    else:
        if hasattr(source, "read"):
            text = source.read()
        else:
            s = str(source)
            text = s if s.lstrip().startswith("{") else open(s, encoding="utf-8").read()
        desc = json.loads(text)
    kind = desc.get("kind")
    if kind == "gaussian":
        return gaussian(a=float(desc.get("a", 0.5)), dim=int(desc.get("dim", 1)))
    if kind == "hermite":
        k = desc.get("k", 0)
        k = int(k) if isinstance(k, (int, float)) else [int(v) for v in k]
        return hermite_gaussian(k, a=float(desc.get("a", 1.0)), dim=int(desc.get("dim", 1)))
    if kind == "poly":
        return poly_gaussian(desc["coeffs"], a=float(desc.get("a", 1.0)),
                             dim=int(desc.get("dim", 1)))
    if kind == "product":
        return product(*(test_function_from_json(d) for d in desc["factors"]))
    if kind == "zero":
        return zero(dim=int(desc.get("dim", 1)))
    raise ValueError(f"unknown test-function kind {kind!r}; expected one of {_KINDS}")
