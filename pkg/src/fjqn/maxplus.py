"""Dense (max,+)-semiring arithmetic for scalars and matrices.

Scalars live in R ∪ {EPS} where EPS = -inf: a ⊕ b = max(a, b) and
a ⊗ b = a + b. EPS is neutral for ⊕ and absorbing for ⊗. Matrix
constructors reject NaN and +inf, so ⊗ can never hit the undefined
-inf + inf case.
"""

from __future__ import annotations

import numpy as np

EPS = float("-inf")


def oplus(a: float, b: float) -> float:
    """Semiring addition: max(a, b)."""
    return max(a, b)


def otimes(a: float, b: float) -> float:
    """Semiring multiplication: a + b, short-circuited to EPS if either side is EPS."""
    if a == EPS or b == EPS:
        return EPS
    return a + b


class MaxPlusMatrix:
    """Immutable dense matrix over the (max,+) semiring.

    Backed by a read-only float64 ndarray. `@` is the max-plus product;
    elementwise max is `.oplus()`. All operations return new matrices.
    """

    __slots__ = ("_data",)

    def __init__(self, entries):
        data = np.array(entries, dtype=np.float64)
        if data.ndim != 2:
            raise ValueError(f"matrix must be two-dimensional, got shape {data.shape}")
        if data.size == 0:
            raise ValueError("matrix must have at least one row and one column")
        if np.isnan(data).any():
            raise ValueError("matrix entries must not be NaN")
        if np.isposinf(data).any():
            raise ValueError("matrix entries must be finite or -inf")
        data.setflags(write=False)
        self._data = data

    @classmethod
    def identity(cls, n: int) -> "MaxPlusMatrix":
        """n x n matrix with 0 on the diagonal, EPS elsewhere (the ⊗ identity)."""
        if n < 1:
            raise ValueError("identity needs n >= 1")
        data = np.full((n, n), EPS)
        np.fill_diagonal(data, 0.0)
        return cls(data)

    @classmethod
    def null(cls, rows: int, cols: int | None = None) -> "MaxPlusMatrix":
        """All-EPS matrix (the ⊕ identity and ⊗ annihilator)."""
        cols = rows if cols is None else cols
        if rows < 1 or cols < 1:
            raise ValueError("null matrix needs rows >= 1 and cols >= 1")
        return cls(np.full((rows, cols), EPS))

    @classmethod
    def diagonal(cls, values) -> "MaxPlusMatrix":
        """Square matrix with `values` on the diagonal, EPS elsewhere."""
        vec = np.asarray(values, dtype=np.float64)
        if vec.ndim != 1 or vec.size == 0:
            raise ValueError("diagonal needs a nonempty one-dimensional sequence")
        data = np.full((vec.size, vec.size), EPS)
        np.fill_diagonal(data, vec)
        return cls(data)

    @property
    def rows(self) -> int:
        return self._data.shape[0]

    @property
    def cols(self) -> int:
        return self._data.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self._data.shape

    @property
    def entries(self) -> np.ndarray:
        """Read-only view of the underlying float64 array."""
        return self._data

    @property
    def T(self) -> "MaxPlusMatrix":
        return MaxPlusMatrix(self._data.T)

    def oplus(self, other: "MaxPlusMatrix") -> "MaxPlusMatrix":
        """Elementwise ⊕ (max)."""
        if self.shape != other.shape:
            raise ValueError(f"dimension mismatch for ⊕: {self.shape} vs {other.shape}")
        return MaxPlusMatrix(np.maximum(self._data, other._data))

    def otimes(self, other: "MaxPlusMatrix") -> "MaxPlusMatrix":
        """Max-plus product: entry (i,j) = max_m self[i,m] + other[m,j]."""
        if self.cols != other.rows:
            raise ValueError(f"dimension mismatch for ⊗: {self.shape} vs {other.shape}")
        # -inf + -inf = -inf and -inf + finite = -inf are both safe here
        # because +inf is rejected at construction.
        prod = self._data[:, :, None] + other._data[None, :, :]
        return MaxPlusMatrix(prod.max(axis=1))

    def __matmul__(self, other: "MaxPlusMatrix") -> "MaxPlusMatrix":
        return self.otimes(other)

    def power(self, q: int) -> "MaxPlusMatrix":
        """q-fold max-plus product; power 0 is the identity. Repeated multiplication."""
        if self.rows != self.cols:
            raise ValueError(f"matrix power needs a square matrix, got {self.shape}")
        if not isinstance(q, (int, np.integer)) or q < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = MaxPlusMatrix.identity(self.rows)
        for _ in range(q):
            result = result @ self
        return result

    def apply(self, x) -> np.ndarray:
        """Max-plus matrix-vector product: result[i] = max_j self[i,j] + x[j]."""
        vec = np.asarray(x, dtype=np.float64)
        if vec.ndim != 1 or vec.size != self.cols:
            raise ValueError(f"dimension mismatch: {self.shape} applied to vector of size {vec.size}")
        if np.isnan(vec).any() or np.isposinf(vec).any():
            raise ValueError("vector entries must be finite or -inf")
        return (self._data + vec[None, :]).max(axis=1)

    def leq(self, other: "MaxPlusMatrix") -> bool:
        """Entrywise order: true iff self[i,j] <= other[i,j] everywhere (EPS is bottom)."""
        if self.shape != other.shape:
            raise ValueError(f"dimension mismatch for <=: {self.shape} vs {other.shape}")
        return bool(np.all(self._data <= other._data))

    def __eq__(self, other) -> bool:
        if not isinstance(other, MaxPlusMatrix):
            return NotImplemented
        return self.shape == other.shape and bool(np.array_equal(self._data, other._data))

    def __hash__(self):
        return hash((self.shape, self._data.tobytes()))

    def __repr__(self) -> str:
        return f"MaxPlusMatrix({self._data.tolist()!r})"


def mat_oplus(a: MaxPlusMatrix, b: MaxPlusMatrix) -> MaxPlusMatrix:
    """Elementwise ⊕ of two equal-shape matrices."""
    return a.oplus(b)


def mat_otimes(a: MaxPlusMatrix, b: MaxPlusMatrix) -> MaxPlusMatrix:
    """Max-plus matrix product."""
    return a.otimes(b)


def mat_power(a: MaxPlusMatrix, q: int) -> MaxPlusMatrix:
    """q-th max-plus power of a square matrix."""
    return a.power(q)


def mat_leq(a: MaxPlusMatrix, b: MaxPlusMatrix) -> bool:
    """Entrywise matrix order with EPS as the bottom element."""
    return a.leq(b)


def norm(x) -> float:
    """Maximum entry of a vector or matrix (EPS for all-EPS input)."""
    if isinstance(x, MaxPlusMatrix):
        return float(x.entries.max())
    arr = np.asarray(x, dtype=np.float64)
    if arr.size == 0:
        raise ValueError("norm of an empty vector is undefined")
    if np.isnan(arr).any() or np.isposinf(arr).any():
        raise ValueError("entries must be finite or -inf")
    return float(arr.max())
