# models/descriptor.py
"""
Subcategory Descriptors

Finite descriptions of 2-3 subcategories of finitely generated abelian groups:
1. Empty, the empty subcategory
2. IMod(k), the modules whose rank is divisible by k (k ≥ 1)
3. TorsionF(support, lattice, outside), the torsion modules whose length
   vector restricted to the support lies in the lattice; torsion at other
   primes is either forbidden or left free

The operations on descriptors live in services/subcat.py.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence, Tuple, Union

from models.errors import DimensionMismatchError
from models.lattice import Lattice, lattice_from_generators


class Outside(str, Enum):
    """What a TorsionF descriptor allows at primes outside its support."""
    FORBIDDEN = "forbidden"
    FREE = "free"


@dataclass(frozen=True)
class Empty:
    kind = "empty"


@dataclass(frozen=True)
class IMod:
    k: int
    kind = "imod"

    def __post_init__(self):
        if int(self.k) < 1:
            raise ValueError(f"IMod needs k >= 1, got {self.k}")


@dataclass(frozen=True)
class TorsionF:
    """
    Torsion modules X with (χ_p(X))_{p ∈ support} ∈ lattice.

    Attributes
    ----------
    support : tuple[int, ...]
        Primes, ascending.
    lattice : Lattice
        Over exactly ``support``.
    outside : Outside
        FORBIDDEN: torsion at other primes excludes a module.
        FREE: torsion at other primes is unconstrained.
    """
    support: Tuple[int, ...]
    lattice: Lattice
    outside: Outside = Outside.FORBIDDEN
    kind = "torsionF"

    def __post_init__(self):
        support = tuple(int(p) for p in self.support)
        if list(support) != sorted(set(support)):
            raise DimensionMismatchError(f"support must be strictly ascending, got {list(support)}")
        if self.lattice.support != support:
            raise DimensionMismatchError(
                f"lattice support {list(self.lattice.support)} differs from {list(support)}")
        object.__setattr__(self, "support", support)
        object.__setattr__(self, "outside", Outside(self.outside))

    @classmethod
    def of(cls, support: Sequence[int], vectors: Iterable[Sequence[int]],
           outside: Outside = Outside.FORBIDDEN) -> "TorsionF":
        """Sort the support and build the lattice from generating vectors."""
        order = sorted(range(len(support)), key=lambda i: support[i])
        labels = [int(support[i]) for i in order]
        permuted = [[v[i] for i in order] for v in vectors]
        return cls(tuple(labels), lattice_from_generators(labels, permuted), outside)

    @classmethod
    def zero_only(cls) -> "TorsionF":
        """{0}."""
        return cls((), Lattice.zero(()), Outside.FORBIDDEN)

    @classmethod
    def all_torsion(cls) -> "TorsionF":
        """I_0, every torsion module."""
        return cls((), Lattice.zero(()), Outside.FREE)


SubcatDescriptor = Union[Empty, IMod, TorsionF]
