# services/subcat.py
"""
2-3 Subcategory Service

This module implements the operations on subcategory descriptors:
1. Membership of a module in a descriptor
2. The closure of a finite set of generators
3. Canonical forms, equality and inclusion of descriptors
4. The correspondence between subgroups of ℤ^S and subcategories of the
   S-torsion modules, and the example showing it fails for the whole category
"""

import logging
from typing import NamedTuple, Optional, Sequence, Tuple

from models.descriptor import Empty, IMod, Outside, SubcatDescriptor, TorsionF
from models.errors import DescriptorError
from models.fgmodule import FGModule, length_vector
from models.lattice import (
    Lattice,
    forces_zero,
    lattice_contains,
    lattice_drop,
    lattice_extend,
    lattice_from_generators,
    lattice_includes,
    positive_part,
)
from models.matrix import gcd_list

LOGGER = logging.getLogger(__name__)


def member(d: SubcatDescriptor, X: FGModule) -> bool:
    """
    Decide whether X belongs to the subcategory described by d.

    Parameters
    ----------
    d : SubcatDescriptor
    X : FGModule

    Returns
    -------
    bool
    """
    if isinstance(d, Empty):
        return False
    if isinstance(d, IMod):
        return X.rank % d.k == 0
    if X.rank > 0:
        return False
    if d.outside is Outside.FORBIDDEN and not set(X.primes) <= set(d.support):
        return False
    return lattice_contains(d.lattice, length_vector(X).restricted(d.support))


def closure(generators: Sequence[FGModule]) -> SubcatDescriptor:
    """
    Smallest 2-3 subcategory containing the generators.

    Parameters
    ----------
    generators : sequence of FGModule

    Returns
    -------
    SubcatDescriptor
        Empty for no generators; IMod(gcd of the ranks) as soon as one
        generator has positive rank; otherwise a TorsionF descriptor with
        forbidden outside over the union of the torsion supports.
    """
    generators = list(generators)
    if not generators:
        return Empty()
    ranks = [g.rank for g in generators if g.rank > 0]
    if ranks:
        return IMod(gcd_list(ranks))
    support = sorted({p for g in generators for p in g.primes})
    vectors = [length_vector(g).restricted(support) for g in generators]
    descriptor = canonicalize(TorsionF(tuple(support), lattice_from_generators(support, vectors)))
    if LOGGER.isEnabledFor(logging.DEBUG):
        LOGGER.debug("closure of %d generators: %s", len(generators), classification_line(descriptor))
    return descriptor


class ClosureInvariants(NamedTuple):
    """What the closure of a generator set constrains."""
    kind: str
    k: Optional[int] = None
    descriptor: Optional[SubcatDescriptor] = None


def closure_invariants(generators: Sequence[FGModule]) -> ClosureInvariants:
    d = closure(generators)
    if isinstance(d, Empty):
        return ClosureInvariants("empty", descriptor=d)
    if isinstance(d, IMod):
        return ClosureInvariants("rank", k=d.k, descriptor=d)
    return ClosureInvariants("lattice", descriptor=d)


def canonicalize(d: SubcatDescriptor) -> SubcatDescriptor:
    """
    Canonical form of a descriptor, with the same member set.

    The lattice is replaced by its positively generated part (length vectors
    are nonnegative). Then primes are dropped from the support while the
    constraint they carry is vacuous: under a free outside, when the unit
    vector of p lies in the lattice; under a forbidden outside, when the
    lattice forces coordinate p to zero.
    """
    if not isinstance(d, TorsionF):
        return d
    H = d.lattice
    while True:
        H = positive_part(H)
        droppable = next((p for p in H.support if _vacuous(H, p, d.outside)), None)
        if droppable is None:
            break
        H = lattice_drop(H, droppable)
    return TorsionF(H.support, H, d.outside)


def _vacuous(H: Lattice, p: int, outside: Outside) -> bool:
    if outside is Outside.FREE:
        unit = [int(q == p) for q in H.support]
        return lattice_contains(H, unit)
    return forces_zero(H, p)


def _fill(outside: Outside) -> str:
    return "full" if outside is Outside.FREE else "zero"


def _aligned(d1: TorsionF, d2: TorsionF) -> Tuple[Lattice, Lattice]:
    support = sorted(set(d1.support) | set(d2.support))
    return (lattice_extend(d1.lattice, support, _fill(d1.outside)),
            lattice_extend(d2.lattice, support, _fill(d2.outside)))


def descriptor_equal(d1: SubcatDescriptor, d2: SubcatDescriptor) -> bool:
    """True iff the two descriptors have the same member set."""
    d1, d2 = canonicalize(d1), canonicalize(d2)
    if type(d1) is not type(d2):
        return False
    if isinstance(d1, Empty):
        return True
    if isinstance(d1, IMod):
        return d1.k == d2.k
    if d1.outside is not d2.outside:
        return False
    H1, H2 = _aligned(d1, d2)
    return H1 == H2


def includes(d1: SubcatDescriptor, d2: SubcatDescriptor) -> bool:
    """True iff every member of d2 is a member of d1."""
    if isinstance(d2, Empty):
        return True
    if isinstance(d1, Empty):
        return False
    if isinstance(d1, IMod):
        return isinstance(d2, TorsionF) or d2.k % d1.k == 0
    if isinstance(d2, IMod):
        return False
    if d1.outside is Outside.FORBIDDEN and d2.outside is Outside.FREE:
        return False
    H1, H2 = _aligned(canonicalize(d1), canonicalize(d2))
    return lattice_includes(H1, H2)


def subgroup_to_subcat(S: Sequence[int], H: Lattice) -> TorsionF:
    """The subcategory of S-torsion modules whose length vectors lie in H."""
    if set(H.support) != set(int(p) for p in S):
        raise DescriptorError(f"lattice support {list(H.support)} does not match {list(S)}")
    return canonicalize(TorsionF.of(H.support, H.vectors()))


def subcat_to_subgroup(d: SubcatDescriptor, S: Sequence[int]) -> Lattice:
    """
    The subgroup of ℤ^S spanned by the length vectors of the members of d.

    Raises
    ------
    DescriptorError
        If d is not a TorsionF descriptor with forbidden outside, or its
        support is not contained in S.
    """
    if not isinstance(d, TorsionF):
        raise DescriptorError(f"{classification_line(d)} has no subgroup in K0 of the S-torsion modules")
    if d.outside is not Outside.FORBIDDEN:
        raise DescriptorError("a descriptor with free outside is not a subcategory of the S-torsion modules")
    d = canonicalize(d)
    if not set(d.support) <= set(int(p) for p in S):
        raise DescriptorError(f"support {list(d.support)} is not contained in {list(S)}")
    return lattice_extend(d.lattice, S, "zero")


def k0_rank_image(d: SubcatDescriptor) -> int:
    """Generator of the subgroup of K0 = ℤ (rank classes) spanned by the members."""
    return d.k if isinstance(d, IMod) else 0


def k0_failure_witness() -> Tuple[TorsionF, TorsionF]:
    """All 2-torsion and all 3-torsion: distinct, with the same rank-class image {0}."""
    return TorsionF.of([2], [[1]]), TorsionF.of([3], [[1]])


def classification_line(d: SubcatDescriptor) -> str:
    """One-line name such as I_2, F({2}, Z) or F({2,3}, <(2,1)>)."""
    if isinstance(d, Empty):
        return "empty"
    if isinstance(d, IMod):
        return f"I_{d.k}"
    d = canonicalize(d)
    if not d.support:
        return "{0}" if d.outside is Outside.FORBIDDEN else "I_0"
    primes = "{" + ",".join(str(p) for p in d.support) + "}"
    suffix = "; outside free" if d.outside is Outside.FREE else ""
    return f"F({primes}, {d.lattice}{suffix})"
