# models/matrix.py
"""
Exact Integer Matrices

This module implements the integer linear algebra every other part of the
package relies on:
1. IntMatrix, an immutable matrix of arbitrary-precision integers
2. Smith normal form with unimodular transforms (U·A·V = D)
3. Row-style Hermite normal form with its transform (U·A = H)
4. Integer kernels derived from the Smith form

Matrices are stored as numpy arrays of dtype=object so that entries stay Python
ints and never overflow. Empty matrices (zero rows or zero columns) are legal
and behave as zero maps.
"""

from dataclasses import dataclass
from functools import reduce
from math import gcd
from typing import Iterable, List, Sequence, Tuple

import numpy as np

from models.errors import DimensionMismatchError


def gcd_list(values: Iterable[int]) -> int:
    """
    Greatest common divisor of a list of integers.

    Parameters
    ----------
    values : iterable of int
        Integers of any sign.

    Returns
    -------
    int
        gcd of the absolute values; 0 for an empty list.
    """
    return reduce(gcd, (abs(int(v)) for v in values), 0)


def _object_array(rows: int, cols: int) -> np.ndarray:
    return np.zeros((rows, cols), dtype=object)


class IntMatrix:
    """
    Immutable integer matrix.

    Parameters
    ----------
    entries : sequence of sequences of int, or np.ndarray
        Row-major entries.
    rows, cols : int, optional
        Required only to give the shape of an empty matrix, e.g.
        ``IntMatrix([], rows=0, cols=3)``.
    """

    __slots__ = ("_array",)

    def __init__(self, entries=(), rows: int = None, cols: int = None):
        if isinstance(entries, np.ndarray) and entries.ndim == 2:
            source = entries.tolist()
            shape = entries.shape
        else:
            source = [list(row) for row in entries]
            shape = (len(source), len(source[0]) if source else 0)
        if rows is not None or cols is not None:
            if source and (rows is not None and rows != shape[0]):
                raise DimensionMismatchError(f"expected {rows} rows, got {shape[0]}")
            shape = (rows if rows is not None else shape[0], cols if cols is not None else shape[1])
        array = _object_array(*shape)
        for i, row in enumerate(source):
            if len(row) != shape[1]:
                raise DimensionMismatchError("ragged matrix rows")
            for j, value in enumerate(row):
                array[i, j] = int(value)
        array.flags.writeable = False
        self._array = array

    # Constructors

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(_object_array(rows, cols))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        array = _object_array(n, n)
        for i in range(n):
            array[i, i] = 1
        return cls(array)

    @classmethod
    def diagonal(cls, values: Sequence[int], rows: int = None, cols: int = None) -> "IntMatrix":
        """Rectangular diagonal matrix with the given diagonal (default square)."""
        rows = len(values) if rows is None else rows
        cols = rows if cols is None else cols
        array = _object_array(rows, cols)
        for i, value in enumerate(values):
            array[i, i] = int(value)
        return cls(array)

    @classmethod
    def block_diag(cls, *blocks: "IntMatrix") -> "IntMatrix":
        rows = sum(b.rows for b in blocks)
        cols = sum(b.cols for b in blocks)
        array = _object_array(rows, cols)
        r = c = 0
        for b in blocks:
            array[r:r + b.rows, c:c + b.cols] = b._array
            r += b.rows
            c += b.cols
        return cls(array)

    @classmethod
    def hstack(cls, *blocks: "IntMatrix") -> "IntMatrix":
        rows = {b.rows for b in blocks}
        if len(rows) > 1:
            raise DimensionMismatchError(f"hstack of matrices with row counts {sorted(rows)}")
        n = rows.pop() if rows else 0
        array = _object_array(n, sum(b.cols for b in blocks))
        c = 0
        for b in blocks:
            array[:, c:c + b.cols] = b._array
            c += b.cols
        return cls(array)

    @classmethod
    def vstack(cls, *blocks: "IntMatrix") -> "IntMatrix":
        cols = {b.cols for b in blocks}
        if len(cols) > 1:
            raise DimensionMismatchError(f"vstack of matrices with column counts {sorted(cols)}")
        n = cols.pop() if cols else 0
        array = _object_array(sum(b.rows for b in blocks), n)
        r = 0
        for b in blocks:
            array[r:r + b.rows, :] = b._array
            r += b.rows
        return cls(array)

    # Accessors

    @property
    def rows(self) -> int:
        return self._array.shape[0]

    @property
    def cols(self) -> int:
        return self._array.shape[1]

    @property
    def shape(self) -> Tuple[int, int]:
        return self._array.shape

    def to_array(self) -> np.ndarray:
        """Writable copy of the underlying object array."""
        return self._array.copy()

    def tolist(self) -> List[List[int]]:
        return [[int(x) for x in row] for row in self._array.tolist()] if self.rows else []

    def entries(self) -> Tuple[int, ...]:
        """Row-major flat tuple of entries."""
        return tuple(int(x) for x in self._array.ravel())

    def __getitem__(self, key):
        return self._array[key]

    def row(self, i: int) -> Tuple[int, ...]:
        return tuple(int(x) for x in self._array[i, :])

    def column(self, j: int) -> Tuple[int, ...]:
        return tuple(int(x) for x in self._array[:, j])

    def columns(self) -> List[Tuple[int, ...]]:
        return [self.column(j) for j in range(self.cols)]

    def row_vectors(self) -> List[Tuple[int, ...]]:
        return [self.row(i) for i in range(self.rows)]

    def diagonal_entries(self) -> Tuple[int, ...]:
        return tuple(int(self._array[i, i]) for i in range(min(self.shape)))

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self._array.T.copy())

    @property
    def T(self) -> "IntMatrix":
        return self.transpose()

    def with_entry(self, i: int, j: int, value: int) -> "IntMatrix":
        array = self.to_array()
        array[i, j] = int(value)
        return IntMatrix(array)

    def is_zero(self) -> bool:
        return all(x == 0 for x in self._array.ravel())

    def is_identity(self) -> bool:
        return self.rows == self.cols and self == IntMatrix.identity(self.rows)

    # Arithmetic

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise DimensionMismatchError(f"cannot multiply {self.shape} by {other.shape}")
        if self.cols == 0:
            return IntMatrix.zeros(self.rows, other.cols)
        return IntMatrix(self._array.dot(other._array))

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        if self.shape != other.shape:
            raise DimensionMismatchError(f"cannot add {self.shape} and {other.shape}")
        return IntMatrix(self._array + other._array)

    def __neg__(self) -> "IntMatrix":
        return IntMatrix(-self._array)

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        return self + (-other)

    def apply(self, vector: Sequence[int]) -> Tuple[int, ...]:
        """Matrix times a column vector."""
        if len(vector) != self.cols:
            raise DimensionMismatchError(f"vector of length {len(vector)} for {self.shape} matrix")
        return (self @ IntMatrix([[v] for v in vector], rows=len(vector), cols=1)).column(0)

    # Identity

    def __eq__(self, other) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries() == other.entries()

    def __hash__(self) -> int:
        return hash((self.shape, self.entries()))

    def __repr__(self) -> str:
        return f"IntMatrix({self.tolist()!r}, rows={self.rows}, cols={self.cols})"


@dataclass(frozen=True)
class SNFResult:
    """
    Smith normal form of A with its transforms: U·A·V = D.

    Attributes
    ----------
    U : IntMatrix
        Unimodular, rows×rows.
    D : IntMatrix
        Rectangular diagonal with d_1 | d_2 | ..., all ≥ 0, zeros trailing.
    V : IntMatrix
        Unimodular, cols×cols.
    """
    U: IntMatrix
    D: IntMatrix
    V: IntMatrix

    @property
    def invariant_factors(self) -> Tuple[int, ...]:
        """Nonzero diagonal entries (including units)."""
        return tuple(d for d in self.D.diagonal_entries() if d != 0)

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)


def _smallest_nonzero(D: np.ndarray, t: int):
    best = None
    for i in range(t, D.shape[0]):
        for j in range(t, D.shape[1]):
            value = D[i, j]
            if value != 0 and (best is None or abs(value) < best[0]):
                best = (abs(value), i, j)
    return best


def smith_normal_form(A: IntMatrix) -> SNFResult:
    """
    Compute the Smith normal form of an integer matrix.

    Row and column GCD reduction, always pivoting on the smallest nonzero
    entry of the remaining block to keep coefficients small.

    Parameters
    ----------
    A : IntMatrix
        Any integer matrix, possibly empty.

    Returns
    -------
    SNFResult
        U, D, V with U·A·V = D.
    """
    D = A.to_array()
    m, n = D.shape
    U = IntMatrix.identity(m).to_array()
    V = IntMatrix.identity(n).to_array()

    for t in range(min(m, n)):
        while True:
            pivot = _smallest_nonzero(D, t)
            if pivot is None:
                return SNFResult(IntMatrix(U), IntMatrix(D), IntMatrix(V))
            _, i, j = pivot
            if i != t:
                D[[t, i]] = D[[i, t]]
                U[[t, i]] = U[[i, t]]
            if j != t:
                D[:, [t, j]] = D[:, [j, t]]
                V[:, [t, j]] = V[:, [j, t]]

            clean = True
            for i in range(t + 1, m):
                q = D[i, t] // D[t, t]
                if q:
                    D[i] -= q * D[t]
                    U[i] -= q * U[t]
                clean = clean and D[i, t] == 0
            for j in range(t + 1, n):
                q = D[t, j] // D[t, t]
                if q:
                    D[:, j] -= q * D[:, t]
                    V[:, j] -= q * V[:, t]
                clean = clean and D[t, j] == 0
            if not clean:
                continue

            # the pivot must divide everything left, otherwise pull a bad row up
            bad_row = next((i for i in range(t + 1, m)
                            if any(D[i, j] % D[t, t] for j in range(t + 1, n))), None)
            if bad_row is None:
                break
            D[t] += D[bad_row]
            U[t] += U[bad_row]

        if D[t, t] < 0:
            D[t] = -D[t]
            U[t] = -U[t]

    return SNFResult(IntMatrix(U), IntMatrix(D), IntMatrix(V))


def hermite_normal_form(A: IntMatrix) -> Tuple[IntMatrix, IntMatrix]:
    """
    Row-style Hermite normal form.

    Pivots are positive, entries above a pivot lie in [0, pivot), zero rows
    sit at the bottom.

    Parameters
    ----------
    A : IntMatrix
        Any integer matrix.

    Returns
    -------
    H, U : IntMatrix
        U unimodular with U·A = H.
    """
    H = A.to_array()
    m, n = H.shape
    U = IntMatrix.identity(m).to_array()
    r = 0
    for c in range(n):
        if r == m:
            break
        while True:
            candidates = [(abs(H[i, c]), i) for i in range(r, m) if H[i, c] != 0]
            if not candidates:
                break
            _, i = min(candidates)
            if i != r:
                H[[r, i]] = H[[i, r]]
                U[[r, i]] = U[[i, r]]
            done = True
            for i in range(r + 1, m):
                q = H[i, c] // H[r, c]
                if q:
                    H[i] -= q * H[r]
                    U[i] -= q * U[r]
                done = done and H[i, c] == 0
            if done:
                break
        if H[r, c] == 0:
            continue
        if H[r, c] < 0:
            H[r] = -H[r]
            U[r] = -U[r]
        for i in range(r):
            q = H[i, c] // H[r, c]
            if q:
                H[i] -= q * H[r]
                U[i] -= q * U[r]
        r += 1
    return IntMatrix(H), IntMatrix(U)


def integer_kernel(A: IntMatrix) -> IntMatrix:
    """
    Integer basis of {x : A·x = 0}, as the columns of the returned matrix.

    Read off the Smith form: if U·A·V = D then A·V[:, j] = 0 exactly for the
    columns j past the rank.
    """
    snf = smith_normal_form(A)
    V = snf.V
    keep = list(range(snf.rank, A.cols))
    if not keep:
        return IntMatrix.zeros(A.cols, 0)
    return IntMatrix.hstack(*(IntMatrix([[x] for x in V.column(j)], rows=A.cols, cols=1) for j in keep))
