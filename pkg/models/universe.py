# models/universe.py
"""
Finite Universes

This module implements the two models the brute-force oracle works on:
1. UniverseBounds, the finite set of modules it enumerates
2. FiniteGroupTable, an explicit finite abelian group with its addition
   table, used to enumerate every subgroup
"""

import itertools
import math
from dataclasses import dataclass, replace
from typing import FrozenSet, List, Optional, Tuple

import numpy as np
from sympy import multiplicity

from models.errors import OracleBoundsError
from models.fgmodule import FGModule, Partition, Prime


@dataclass(frozen=True)
class UniverseBounds:
    """
    Bounds of a finite module universe.

    Attributes
    ----------
    primes : tuple[int, ...]
        Allowed torsion primes, ascending.
    max_rank : int
    max_length_per_prime : int
    max_order : int
        Cap on the order of a group enumerated subgroup by subgroup.
    working_length : int, optional
        Per-prime length of the larger universe the fixpoint closure runs in;
        defaults to twice ``max_length_per_prime``.
    """
    primes: Tuple[int, ...] = (2, 3)
    max_rank: int = 2
    max_length_per_prime: int = 3
    max_order: int = 144
    working_length: Optional[int] = None

    def __post_init__(self):
        primes = tuple(sorted({int(Prime(p)) for p in self.primes}))
        if 0 in primes:
            raise ValueError("universe primes must be nonzero")
        if self.max_rank < 0 or self.max_length_per_prime < 0:
            raise ValueError("universe bounds must be nonnegative")
        if self.max_order < 1:
            raise ValueError(f"max_order must be positive, got {self.max_order}")
        if self.working_length is not None and self.working_length < self.max_length_per_prime:
            raise ValueError("working_length cannot be below max_length_per_prime")
        object.__setattr__(self, "primes", primes)

    @property
    def effective_working_length(self) -> int:
        if self.working_length is None:
            return 2 * self.max_length_per_prime
        return self.working_length

    def working(self) -> "UniverseBounds":
        """The enlarged universe used by the fixpoint closure."""
        return replace(self, max_length_per_prime=self.effective_working_length, working_length=None)

    def contains(self, X: FGModule) -> bool:
        return (X.rank <= self.max_rank
                and set(X.primes) <= set(self.primes)
                and all(part.total <= self.max_length_per_prime for _, part in X.torsion))


class FiniteGroupTable:
    """
    Explicit model of a finite abelian group ⊕ ℤ/m_i.

    Elements are residue tuples, numbered in mixed radix (last factor fastest).

    Attributes
    ----------
    module : FGModule
    moduli : np.ndarray
    size : int
    elements : np.ndarray
        size × (number of factors) residues.
    addition : np.ndarray
        size × size table of element indices.
    """

    def __init__(self, module: FGModule):
        if module.rank:
            raise OracleBoundsError(f"{module} is infinite")
        self.module = module
        self.moduli = np.array(module.cyclic_moduli(), dtype=np.int64)
        self.size = module.order()
        self.weights = np.array([math.prod(module.cyclic_moduli()[i + 1:])
                                 for i in range(len(self.moduli))], dtype=np.int64)
        grid = list(itertools.product(*(range(int(m)) for m in self.moduli)))
        self.elements = np.array(grid, dtype=np.int64).reshape(self.size, len(self.moduli))
        self.addition = self.index_of(self.elements[:, None, :] + self.elements[None, :, :])
        self._scaled = {}

    def index_of(self, residues: np.ndarray) -> np.ndarray:
        return (residues % self.moduli) @ self.weights

    def scaled(self, k: int) -> np.ndarray:
        """Index of k·x for every element x."""
        if k not in self._scaled:
            self._scaled[k] = self.index_of(k * self.elements)
        return self._scaled[k]

    def join(self, U: FrozenSet[int], g: int) -> FrozenSet[int]:
        """The subgroup generated by U and g, as the union of the cosets U + k·g."""
        members = np.fromiter(U, dtype=np.int64)
        joined = set(U)
        current = int(self.addition[0, g])
        while current != 0:
            joined.update(self.addition[members, current].tolist())
            current = int(self.addition[current, g])
        return frozenset(joined)

    def subgroups(self) -> List[FrozenSet[int]]:
        """
        Every subgroup exactly once, breadth first from {0}.

        Each subgroup U is extended by one representative of every coset of U;
        every subgroup is reached along some chain of such extensions.
        """
        trivial = frozenset({0})
        found = {trivial}
        order = [trivial]
        queue = [trivial]
        while queue:
            U = queue.pop(0)
            members = np.fromiter(U, dtype=np.int64)
            covered = set(U)
            for g in range(self.size):
                if g in covered:
                    continue
                covered.update(self.addition[members, g].tolist())
                J = self.join(U, g)
                if J not in found:
                    found.add(J)
                    order.append(J)
                    queue.append(J)
        return order

    def _type(self, counts_by_prime) -> FGModule:
        torsion = []
        for p, counts in counts_by_prime:
            conjugate = [multiplicity(p, counts[j] // counts[j - 1]) for j in range(1, len(counts))]
            torsion.append((p, Partition(e for e in conjugate if e).conjugate()))
        return FGModule(0, torsion)

    def subgroup_type(self, U: FrozenSet[int]) -> FGModule:
        """Invariant form of U, from the sizes of its p^j-torsion."""
        members = np.fromiter(U, dtype=np.int64)
        counts_by_prime = []
        for p, part in self.module.torsion:
            counts = [1]
            for j in range(1, part[0] + 1):
                counts.append(int(np.count_nonzero(self.scaled(p ** j)[members] == 0)))
            counts_by_prime.append((p, counts))
        return self._type(counts_by_prime)

    def quotient_type(self, U: FrozenSet[int]) -> FGModule:
        """Invariant form of the quotient by U: |(X/U)[p^j]| = #{x : p^j·x ∈ U} / |U|."""
        inside = np.zeros(self.size, dtype=bool)
        inside[np.fromiter(U, dtype=np.int64)] = True
        counts_by_prime = []
        for p, part in self.module.torsion:
            counts = [1]
            for j in range(1, part[0] + 1):
                counts.append(int(np.count_nonzero(inside[self.scaled(p ** j)])) // len(U))
            counts_by_prime.append((p, counts))
        return self._type(counts_by_prime)
