"""Core value types for sampled convex calculus.

Three types everything else builds on:

* :class:`ExtendedReal` -- a real number extended with a +infinity tag.
  Arithmetic kernels in this package never push IEEE infinities through
  sums; +infinity lives in the tag and absorbs addition, and -infinity is
  unrepresentable by construction.
* :class:`MultiIndex` -- a tuple of nonnegative integers with exact
  factorials and the componentwise partial order.
* :class:`GridFunction` -- function samples on a tensor-product grid with
  +infinity allowed as a node value (masked out by every kernel).

Grid data round-trips through a small CSV format: one header line
``# axes: n; lens: l1,...,ln`` followed by ``coord1,...,coordn,value``
rows in lexicographic index order, with the literal ``inf`` for +infinity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Sequence

import numpy as np

__all__ = [
    "ExtendedReal",
    "POS_INF",
    "MultiIndex",
    "multi_indices_of_order",
    "multi_indices_up_to",
    "GridFunction",
]


class ExtendedReal:
    """A float or the single absorbing value +infinity.

    ``ExtendedReal(x)`` wraps a finite float; ``ExtendedReal.infinity()``
    (or passing ``float('inf')``) builds the infinite element.  NaN and
    -infinity are rejected outright.  Addition with +infinity absorbs,
    comparison places +infinity above every finite value.
    """

    __slots__ = ("_value", "_finite")

    def __init__(self, value: float = 0.0):
        value = float(value)
        if math.isnan(value):
            raise ValueError("ExtendedReal cannot hold NaN")
        if value == -math.inf:
            raise ValueError("ExtendedReal cannot hold -infinity")
        if value == math.inf:
            self._value = math.inf
            self._finite = False
        else:
            self._value = value
            self._finite = True

    @classmethod
    def infinity(cls) -> "ExtendedReal":
        return cls(math.inf)

    @property
    def is_finite(self) -> bool:
        return self._finite

    @property
    def value(self) -> float:
        """Underlying float; ``math.inf`` for the infinite element."""
        return self._value

    def __float__(self) -> float:
        return self._value

    def __add__(self, other):
        other = other if isinstance(other, ExtendedReal) else ExtendedReal(other)
        if not (self._finite and other._finite):
            return ExtendedReal.infinity()
        return ExtendedReal(self._value + other._value)

    __radd__ = __add__

    def __eq__(self, other) -> bool:
        if isinstance(other, ExtendedReal):
            return self._value == other._value
        if isinstance(other, (int, float)):
            return self._value == float(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._value)

    def __lt__(self, other) -> bool:
        other_value = other._value if isinstance(other, ExtendedReal) else float(other)
        return self._value < other_value

    def __le__(self, other) -> bool:
        other_value = other._value if isinstance(other, ExtendedReal) else float(other)
        return self._value <= other_value

    def __gt__(self, other) -> bool:
        return not self.__le__(other)

    def __ge__(self, other) -> bool:
        return not self.__lt__(other)

    def __repr__(self) -> str:
        return "ExtendedReal(inf)" if not self._finite else f"ExtendedReal({self._value!r})"


POS_INF = ExtendedReal.infinity()


class MultiIndex:
    """Immutable tuple of nonnegative integers.

    Supports the componentwise partial order, addition, the order
    ``|alpha| = sum(alpha)``, the exact integer factorial
    ``alpha! = prod(alpha_j!)`` and its floating log for large orders.
    """

    __slots__ = ("_parts",)

    def __init__(self, parts: Iterable[int]):
        parts = tuple(int(p) for p in parts)
        if any(p < 0 for p in parts):
            raise ValueError(f"multi-index components must be nonnegative, got {parts}")
        if not parts:
            raise ValueError("multi-index needs at least one component")
        self._parts = parts

    @property
    def parts(self) -> tuple[int, ...]:
        return self._parts

    @property
    def dim(self) -> int:
        return len(self._parts)

    @property
    def order(self) -> int:
        return sum(self._parts)

    @property
    def factorial(self) -> int:
        """Exact ``prod(alpha_j!)`` as a Python integer."""
        out = 1
        for p in self._parts:
            out *= math.factorial(p)
        return out

    @property
    def log_factorial(self) -> float:
        """``log(alpha!)`` via lgamma, safe far beyond float factorials."""
        return sum(math.lgamma(p + 1) for p in self._parts)

    def monomial(self, x: Sequence[float]) -> float:
        """Evaluate ``prod(x_j ** alpha_j)``."""
        if len(x) != len(self._parts):
            raise ValueError("point dimension does not match multi-index")
        out = 1.0
        for xi, p in zip(x, self._parts):
            out *= float(xi) ** p
        return out

    def __add__(self, other: "MultiIndex") -> "MultiIndex":
        if len(other._parts) != len(self._parts):
            raise ValueError("cannot add multi-indices of different dimensions")
        return MultiIndex(a + b for a, b in zip(self._parts, other._parts))

    def __le__(self, other: "MultiIndex") -> bool:
        """Componentwise partial order."""
        if len(other._parts) != len(self._parts):
            raise ValueError("cannot compare multi-indices of different dimensions")
        return all(a <= b for a, b in zip(self._parts, other._parts))

    def __eq__(self, other) -> bool:
        return isinstance(other, MultiIndex) and self._parts == other._parts

    def __hash__(self) -> int:
        return hash(self._parts)

    def __getitem__(self, j: int) -> int:
        return self._parts[j]

    def __len__(self) -> int:
        return len(self._parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self._parts)

    def __repr__(self) -> str:
        return f"MultiIndex{self._parts!r}"


def multi_indices_of_order(dim: int, order: int) -> list[MultiIndex]:
    """All multi-indices of the given dimension with ``|alpha| == order``,
    in lexicographic order (so the enumeration is deterministic)."""
    if dim < 1:
        raise ValueError("dim must be >= 1")
    if order < 0:
        raise ValueError("order must be >= 0")
    if dim == 1:
        return [MultiIndex((order,))]
    out: list[MultiIndex] = []
    for head in range(order + 1):
        for tail in multi_indices_of_order(dim - 1, order - head):
            out.append(MultiIndex((head,) + tail.parts))
    return out


def multi_indices_up_to(dim: int, bound: int) -> list[MultiIndex]:
    """All multi-indices with ``|alpha| <= bound``, graded lexicographic."""
    out: list[MultiIndex] = []
    for s in range(bound + 1):
        out.extend(multi_indices_of_order(dim, s))
    return out


@dataclass(frozen=True, eq=False)
class GridFunction:
    """Samples of a function on a tensor-product grid.

    Parameters
    ----------
    axes : tuple of 1-D float arrays
        Per-dimension sample coordinates, each strictly increasing.
    values : ndarray
        Array of shape ``(len(axes[0]), ..., len(axes[d-1]))``.  Entries
        may be ``+inf`` (the function is not sampled/defined there); they
        are skipped by every kernel.  ``-inf`` and NaN are invalid, and at
        least one entry must be finite.
    """

    axes: tuple[np.ndarray, ...]
    values: np.ndarray

    def __post_init__(self):
        axes = tuple(np.asarray(a, dtype=float) for a in self.axes)
        if not 1 <= len(axes) <= 3:
            raise ValueError(f"GridFunction supports 1 to 3 dimensions, got {len(axes)}")
        for j, a in enumerate(axes):
            if a.ndim != 1 or a.size < 1:
                raise ValueError(f"axis {j} must be a nonempty 1-D array")
            if np.any(np.diff(a) <= 0):
                raise ValueError(f"axis {j} must be strictly increasing")
        values = np.asarray(self.values, dtype=float)
        shape = tuple(a.size for a in axes)
        if values.shape != shape:
            raise ValueError(f"values shape {values.shape} does not match axes shape {shape}")
        if np.any(np.isnan(values)):
            raise ValueError("values contain NaN")
        if np.any(values == -np.inf):
            raise ValueError("values contain -infinity")
        if not np.any(np.isfinite(values)):
            raise ValueError("values must have at least one finite entry")
        object.__setattr__(self, "axes", axes)
        object.__setattr__(self, "values", values)

    @property
    def dim(self) -> int:
        return len(self.axes)

    @property
    def shape(self) -> tuple[int, ...]:
        return self.values.shape

    @property
    def finite_mask(self) -> np.ndarray:
        return np.isfinite(self.values)

    @classmethod
    def from_callable(cls, fun: Callable, axes: Sequence[Sequence[float]]) -> "GridFunction":
        """Sample ``fun`` on the tensor grid.  ``fun`` is called with the
        meshgrid coordinate arrays, so it must broadcast."""
        axes = tuple(np.asarray(a, dtype=float) for a in axes)
        mesh = np.meshgrid(*axes, indexing="ij")
        return cls(axes, np.asarray(fun(*mesh), dtype=float))

    def node(self, idx: Sequence[int]) -> tuple[float, ...]:
        """Coordinates of the grid node with the given index tuple."""
        return tuple(float(a[i]) for a, i in zip(self.axes, idx))

    def to_csv(self, path) -> None:
        """Write the grid in the toolkit CSV format (lexicographic node order)."""
        lens = ",".join(str(a.size) for a in self.axes)
        lines = [f"# axes: {self.dim}; lens: {lens}"]
        flat = self.values.reshape(-1)
        for k, idx in enumerate(np.ndindex(*self.shape)):
            coords = self.node(idx)
            v = flat[k]
            cell = "inf" if v == np.inf else repr(float(v))
            lines.append(",".join([repr(c) for c in coords] + [cell]))
        with open(path, "w", encoding="utf-8") as fh:
            fh.write("\n".join(lines) + "\n")

    @classmethod
    def from_csv(cls, path) -> "GridFunction":
        """Read a grid written by :meth:`to_csv`."""
        with open(path, "r", encoding="utf-8") as fh:
            header = fh.readline().strip()
            if not header.startswith("# axes:"):
                raise ValueError(f"malformed grid CSV header: {header!r}")
            try:
                axes_part, lens_part = header[1:].split(";")
                dim = int(axes_part.split(":")[1])
                lens = [int(t) for t in lens_part.split(":")[1].split(",")]
            except (IndexError, ValueError) as exc:
                raise ValueError(f"malformed grid CSV header: {header!r}") from exc
            if len(lens) != dim:
                raise ValueError(f"header promises {dim} axes but lists {len(lens)} lengths")
            rows = []
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                cells = line.split(",")
                if len(cells) != dim + 1:
                    raise ValueError(f"grid CSV row has {len(cells)} cells, expected {dim + 1}")
                coords = [float(c) for c in cells[:dim]]
                value = math.inf if cells[dim] == "inf" else float(cells[dim])
                rows.append((coords, value))
        expected = int(np.prod(lens))
        if len(rows) != expected:
            raise ValueError(f"grid CSV has {len(rows)} rows, expected {expected}")
        # Axes are recoverable from the lexicographic row order: axis j takes
        # len(j) distinct values with a fixed stride between consecutive rows.
        axes = []
        stride = expected
        for j in range(dim):
            stride //= lens[j]
            axes.append(np.array([rows[i * stride][0][j] for i in range(lens[j])]))
        values = np.array([v for _, v in rows]).reshape(tuple(lens))
        return cls(tuple(axes), values)
