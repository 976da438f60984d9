# models/lattice.py
"""
Integer Lattices

This module implements the Lattice class, a subgroup H of the free abelian group
on a finite, ordered list of coordinate labels (primes, in practice). It provides:
1. Canonical Hermite bases, so equality is a comparison of bases
2. Membership and coordinates by back-substitution
3. Support alignment (zero or full fill), projection and inclusion
4. The positively generated part H⁺ of a lattice
"""

from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import linprog

from models.errors import DimensionMismatchError
from models.matrix import IntMatrix, hermite_normal_form, integer_kernel


@dataclass(frozen=True)
class Lattice:
    """
    Subgroup of ℤ^support with a canonical basis.

    Attributes
    ----------
    support : tuple[int, ...]
        Coordinate labels, in coordinate order.
    basis : IntMatrix
        Hermite normal form rows with zero rows removed. Two lattices over the
        same support are equal iff their bases are identical.
    generators : IntMatrix
        The vectors the lattice was built from (not part of equality).
    """
    support: Tuple[int, ...]
    basis: IntMatrix
    generators: IntMatrix = field(default=None, compare=False, repr=False)

    @classmethod
    def zero(cls, support: Sequence[int]) -> "Lattice":
        return lattice_from_generators(support, [])

    @classmethod
    def full(cls, support: Sequence[int]) -> "Lattice":
        n = len(support)
        return lattice_from_generators(support, [[int(i == j) for j in range(n)] for i in range(n)])

    @property
    def dimension(self) -> int:
        return len(self.support)

    @property
    def rank(self) -> int:
        return self.basis.rows

    def vectors(self) -> List[Tuple[int, ...]]:
        """Canonical basis rows."""
        return self.basis.row_vectors()

    def is_zero(self) -> bool:
        return self.rank == 0

    def is_full(self) -> bool:
        return self == Lattice.full(self.support)

    def index_of(self, label: int) -> int:
        try:
            return self.support.index(label)
        except ValueError:
            raise DimensionMismatchError(f"{label} is not in the support {list(self.support)}") from None

    def __str__(self) -> str:
        if self.dimension == 1:
            if self.is_zero():
                return "0"
            g = self.basis[0, 0]
            return "Z" if g == 1 else f"{g}Z"
        if self.is_zero():
            return "0"
        if self.is_full():
            return "Z^" + str(self.dimension)
        rows = ", ".join("(" + ",".join(str(x) for x in v) + ")" for v in self.vectors())
        return f"<{rows}>"


def lattice_from_generators(support: Sequence[int], vectors: Iterable[Sequence[int]]) -> Lattice:
    """
    Build the lattice generated by some vectors.

    Parameters
    ----------
    support : sequence of int
        Coordinate labels, distinct.
    vectors : iterable of integer vectors
        Each of length len(support).

    Returns
    -------
    Lattice
        The generated subgroup, in canonical form.

    Raises
    ------
    DimensionMismatchError
        If a vector has the wrong length or the labels repeat.
    """
    support = tuple(int(s) for s in support)
    if len(set(support)) != len(support):
        raise DimensionMismatchError(f"repeated labels in support {list(support)}")
    rows = [tuple(int(x) for x in v) for v in vectors]
    for v in rows:
        if len(v) != len(support):
            raise DimensionMismatchError(
                f"vector {list(v)} has length {len(v)}, support has {len(support)} labels")
    generators = IntMatrix(rows, rows=len(rows), cols=len(support))
    H, _ = hermite_normal_form(generators)
    nonzero = [v for v in H.row_vectors() if any(v)]
    basis = IntMatrix(nonzero, rows=len(nonzero), cols=len(support))
    return Lattice(support, basis, generators)


def lattice_coordinates(H: Lattice, v: Sequence[int]) -> Optional[List[int]]:
    """
    Coefficients c with v = Σ c_i · basis_i, or None if v is not in H.

    The basis is in row echelon form, so the coefficients are read off one
    pivot at a time.
    """
    if len(v) != H.dimension:
        raise DimensionMismatchError(f"vector of length {len(v)} for a lattice over {H.dimension} labels")
    residual = [int(x) for x in v]
    coefficients = []
    column = 0
    for b in H.vectors():
        pivot = next(j for j, x in enumerate(b) if x != 0)
        if any(residual[j] for j in range(column, pivot)):
            return None
        q, r = divmod(residual[pivot], b[pivot])
        if r:
            return None
        residual = [x - q * y for x, y in zip(residual, b)]
        coefficients.append(q)
        column = pivot + 1
    if any(residual):
        return None
    return coefficients


def lattice_contains(H: Lattice, v: Sequence[int]) -> bool:
    return lattice_coordinates(H, v) is not None


def _check_aligned(H1: Lattice, H2: Lattice) -> None:
    if H1.support != H2.support:
        raise DimensionMismatchError(
            f"lattices over different supports {list(H1.support)} and {list(H2.support)}")


def lattice_equal(H1: Lattice, H2: Lattice) -> bool:
    """Equality of subgroups over the same support."""
    _check_aligned(H1, H2)
    return H1.basis == H2.basis


def lattice_includes(H1: Lattice, H2: Lattice) -> bool:
    """True iff H2 ⊆ H1 (same support)."""
    _check_aligned(H1, H2)
    return all(lattice_contains(H1, v) for v in H2.vectors())


def lattice_extend(H: Lattice, support: Sequence[int], fill: str = "zero") -> Lattice:
    """
    Re-express H over a larger support.

    Parameters
    ----------
    H : Lattice
        Lattice whose labels all occur in ``support``.
    support : sequence of int
        The new labels, in the new coordinate order.
    fill : {"zero", "full"}
        "zero" leaves the new coordinates at 0, "full" adds a unit vector for
        every new label.
    """
    support = tuple(int(s) for s in support)
    missing = [s for s in H.support if s not in support]
    if missing:
        raise DimensionMismatchError(f"labels {missing} are not in the target support")
    if fill not in ("zero", "full"):
        raise ValueError(f"unknown fill {fill!r}")
    position = {label: i for i, label in enumerate(support)}
    vectors = []
    for b in H.vectors():
        v = [0] * len(support)
        for label, x in zip(H.support, b):
            v[position[label]] = x
        vectors.append(v)
    if fill == "full":
        for label in support:
            if label not in H.support:
                vectors.append([int(position[label] == i) for i in range(len(support))])
    return lattice_from_generators(support, vectors)


def lattice_drop(H: Lattice, label: int) -> Lattice:
    """Project H away from one coordinate."""
    j = H.index_of(label)
    support = H.support[:j] + H.support[j + 1:]
    return lattice_from_generators(support, [b[:j] + b[j + 1:] for b in H.vectors()])


def forces_zero(H: Lattice, label: int) -> bool:
    """True iff every vector of H has coordinate ``label`` equal to 0."""
    j = H.index_of(label)
    return all(b[j] == 0 for b in H.vectors())


def _positive_coordinates(H: Lattice) -> List[int]:
    """
    Indices j for which some nonnegative vector of H_ℝ has x_j > 0.

    One linear program: maximise Σ y_j with 0 ≤ y_j ≤ x_j, x = Bᵀc ≥ 0 and
    y_j ≤ 1. The cone is closed under addition and scaling, so at the optimum
    y_j is 1 on those coordinates and 0 elsewhere.
    """
    k, n = H.rank, H.dimension
    if k == 0:
        return []
    B = np.array(H.basis.tolist(), dtype=float)
    # variables: c (k, free) then y (n, in [0, 1])
    objective = np.concatenate([np.zeros(k), -np.ones(n)])
    upper = np.vstack([
        np.hstack([-B.T, np.eye(n)]),         # y - x <= 0
        np.hstack([-B.T, np.zeros((n, n))]),  # -x <= 0
    ])
    bounds = [(None, None)] * k + [(0, 1)] * n
    result = linprog(objective, A_ub=upper, b_ub=np.zeros(2 * n), bounds=bounds, method="highs")
    if result.status != 0:
        raise ArithmeticError(f"cone support program failed: {result.message}")
    return [j for j in range(n) if result.x[k + j] > 0.5]


def positive_part(H: Lattice) -> Lattice:
    """
    The sublattice H⁺ generated by the nonnegative vectors of H.

    H⁺ is exactly the set of vectors of H vanishing on the coordinates that no
    nonnegative vector of H reaches, computed as an integer kernel.
    """
    positive = set(_positive_coordinates(H))
    zero_columns = [j for j in range(H.dimension) if j not in positive]
    if not zero_columns:
        return H
    if len(zero_columns) == H.dimension:
        return Lattice.zero(H.support)
    # integer c with (c·B)_j = 0 on the forced columns
    restricted = IntMatrix([[b[j] for b in H.vectors()] for j in zero_columns],
                           rows=len(zero_columns), cols=H.rank)
    kernel = integer_kernel(restricted)
    combined = kernel.transpose() @ H.basis
    return lattice_from_generators(H.support, combined.row_vectors())
