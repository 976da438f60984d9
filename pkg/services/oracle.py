# services/oracle.py
"""
Brute-Force Oracle Service

This module provides ground truth on bounded universes:
1. Enumeration of the modules within UniverseBounds
2. Exhaustive subgroup enumeration, hence a true test for the existence of a
   short exact sequence of finite modules
3. The fixpoint closure of a generator set under the two-out-of-three rule
4. The sandwich check comparing that fixpoint with the descriptor predicate
5. A check that a predicate is closed under two-out-of-three
6. The projection showing that I_k is not closed under kernels

Short exact sequences of finite groups split into primary components, so
existence is decided one prime at a time; subgroup enumeration is only run on
a primary component whose order is at most ``max_order``. Above that cap the
fixpoint uses only sequences certified by the constructive families.
"""

import itertools
import logging
from collections import Counter
from dataclasses import dataclass, replace
from functools import lru_cache
from typing import Callable, FrozenSet, Iterable, List, NamedTuple, Optional, Sequence, Set, Tuple

import numpy as np
from sympy.utilities.iterables import partitions

from models.descriptor import IMod, SubcatDescriptor
from models.errors import OracleBoundsError
from models.fgmodule import FGModule, Partition, Presentation
from models.matrix import IntMatrix
from models.universe import FiniteGroupTable, UniverseBounds
from services.ses import PresentedMorphism, kernel
from services.subcat import classification_line, closure, member

LOGGER = logging.getLogger(__name__)

Triple = Tuple[FGModule, FGModule, FGModule]
PartitionPair = Tuple[Partition, Partition]


@lru_cache(maxsize=None)
def _partitions_up_to(length: int) -> Tuple[Partition, ...]:
    """Partitions of 0..length, by total then descending lexicographic."""
    result = [Partition()]
    for n in range(1, length + 1):
        block = [Partition(e for e, m in p.items() for _ in range(m)) for p in partitions(n)]
        result.extend(sorted(block, reverse=True))
    return tuple(result)


def enumerate_modules(b: UniverseBounds) -> List[FGModule]:
    """
    Every module within the bounds, once each.

    Ordered by rank, then by the per-prime partitions (primes ascending; for
    each prime by total length, then descending lexicographic).
    """
    return list(_universe(b))


@lru_cache(maxsize=None)
def _universe(b: UniverseBounds) -> Tuple[FGModule, ...]:
    choices = _partitions_up_to(b.max_length_per_prime)
    return tuple(FGModule(rank, list(zip(b.primes, parts)))
                 for rank in range(b.max_rank + 1)
                 for parts in itertools.product(choices, repeat=len(b.primes)))


def _primary(p: int, partition: Partition) -> FGModule:
    return FGModule(0, {p: partition})


def enumerate_subgroups(X: FGModule, cap: int) -> List[Tuple[FGModule, FGModule]]:
    """
    (type of U, type of X/U) for every subgroup U of a finite module.

    Raises
    ------
    OracleBoundsError
        If X is infinite or |X| exceeds the cap.
    """
    if X.rank:
        raise OracleBoundsError(f"{X} is infinite")
    if X.order() > cap:
        raise OracleBoundsError(f"|{X}| = {X.order()} exceeds the cap {cap}")
    table = FiniteGroupTable(X)
    return [(table.subgroup_type(U), table.quotient_type(U)) for U in table.subgroups()]


@lru_cache(maxsize=None)
def _census(p: int, partition: Partition) -> FrozenSet[PartitionPair]:
    pairs = frozenset((sub.partition(p), quotient.partition(p))
                      for sub, quotient in enumerate_subgroups(_primary(p, partition), p ** partition.total))
    LOGGER.debug("census of %s: %d subgroup types", _primary(p, partition), len(pairs))
    return pairs


def primary_census(p: int, partition: Partition, cap: int) -> FrozenSet[PartitionPair]:
    """Distinct (sub, quotient) partitions of the subgroups of the p-group of type ``partition``."""
    partition = Partition(partition)
    if p ** partition.total > cap:
        raise OracleBoundsError(f"|{_primary(p, partition)}| exceeds the cap {cap}")
    return _census(p, partition)


def ses_exists(A: FGModule, B: FGModule, C: FGModule, cap: int) -> bool:
    """
    True iff there is a short exact sequence 0 → A → B → C → 0 of finite modules.

    The cap bounds each primary component: |B_p| must be at most ``cap`` for
    every prime p, while |B| itself may exceed it.

    Raises
    ------
    OracleBoundsError
        If a module is infinite or some primary component B_p has |B_p| > cap.
    """
    for X in (A, B, C):
        if X.rank:
            raise OracleBoundsError(f"{X} is infinite")
    for p in sorted(set(A.primes) | set(B.primes) | set(C.primes)):
        pair = (A.partition(p), C.partition(p))
        if pair not in primary_census(p, B.partition(p), cap):
            return False
    return True


def _sub_multisets(partition: Partition) -> Iterable[PartitionPair]:
    counts = sorted(Counter(partition).items())
    for choice in itertools.product(*(range(m + 1) for _, m in counts)):
        taken = [e for (e, _), k in zip(counts, choice) for _ in range(k)]
        rest = [e for (e, m), k in zip(counts, choice) for _ in range(m - k)]
        yield Partition(taken), Partition(rest)


def _halved(remainder: Counter) -> Optional[Partition]:
    if any(m % 2 for m in remainder.values()):
        return None
    return Partition(e for e, m in remainder.items() for _ in range(m // 2))


@lru_cache(maxsize=None)
def _certified(partition: Partition) -> FrozenSet[PartitionPair]:
    """
    (sub, quotient) pairs for a p-group of this type known from the
    constructive families: split sequences and the two exponent-trading pairs
    padded by G ⊕ G.
    """
    pairs: Set[PartitionPair] = set(_sub_multisets(partition))
    counts = Counter(partition)
    top = partition[0] if partition else 0
    for r in range(2, top):
        rest = counts - Counter([r - 1, r + 1])
        if sum(rest.values()) == len(partition) - 2 and (G := _halved(rest)) is not None:
            sub = Partition([r]).merge(G)
            pairs.add((sub, sub))
            pairs.add((sub, Partition([r - 1, 1]).merge(G)))
    for r in range(1, top):
        rest = counts - Counter([1, r + 1, r])
        if sum(rest.values()) == len(partition) - 3 and (G := _halved(rest)) is not None:
            sub = Partition([1, r]).merge(G)
            pairs.add((sub, sub))
            pairs.add((sub, Partition([r + 1]).merge(G)))
    return frozenset(pairs)


def _pairs(p: int, partition: Partition, cap: int) -> FrozenSet[PartitionPair]:
    if p ** partition.total <= cap:
        return _census(p, partition)
    return _certified(partition)


def _finite_triples(modules: Sequence[FGModule], b: UniverseBounds) -> Iterable[Triple]:
    for B in modules:
        if B.rank:
            continue
        per_prime = [[(p, pair) for pair in _pairs(p, B.partition(p), b.max_order)] for p in b.primes]
        for choice in itertools.product(*per_prime):
            A = FGModule(0, [(p, sub) for p, (sub, _) in choice])
            C = FGModule(0, [(p, quotient) for p, (_, quotient) in choice])
            yield A, B, C


def _rank_triples(modules: Sequence[FGModule], b: UniverseBounds, working_length: int) -> Iterable[Triple]:
    for B in modules:
        if not B.rank:
            continue
        # split sequences A ⊕ C = B with a free part on either side
        per_prime = [[(p, pair) for pair in _sub_multisets(B.partition(p))] for p in b.primes]
        for choice in itertools.product(*per_prime):
            for rank in range(B.rank + 1):
                A = FGModule(rank, [(p, sub) for p, (sub, _) in choice])
                C = FGModule(B.rank - rank, [(p, rest) for p, (_, rest) in choice])
                yield A, B, C
        for p in b.primes:
            for t in range(1, working_length + 1):
                yield B, B, FGModule(0, {p: [t]})
        yield B.torsion_part(), B, B.free_part()


@lru_cache(maxsize=None)
def _triple_arrays(b: UniverseBounds):
    """Universe of the working bounds and its certified triples as index arrays."""
    modules = enumerate_modules(b)
    index = {X: i for i, X in enumerate(modules)}

    def to_array(triples: Iterable[Triple]) -> np.ndarray:
        rows = {(index[A], index[B], index[C]) for A, B, C in triples
                if A in index and C in index}
        return np.array(sorted(rows), dtype=np.int64).reshape(len(rows), 3)

    finite = to_array(_finite_triples(modules, b))
    ranked = to_array(_rank_triples(modules, b, b.max_length_per_prime))
    LOGGER.info("working universe of %d modules: %d finite and %d free-part triples",
                len(modules), len(finite), len(ranked))
    return modules, index, finite, ranked


@lru_cache(maxsize=None)
def _in_bounds(working: UniverseBounds, b: UniverseBounds) -> np.ndarray:
    """Mask of the working universe selecting the modules within ``b``."""
    modules = _triple_arrays(working)[0]
    mask = np.fromiter((b.contains(X) for X in modules), dtype=bool, count=len(modules))
    mask.flags.writeable = False
    return mask


def closure_fixpoint(generators: Sequence[FGModule], b: UniverseBounds) -> FrozenSet[FGModule]:
    """
    Least set containing the generators and closed under two-out-of-three.

    The fixpoint runs over the working universe (per-prime length
    ``b.effective_working_length``) and is then restricted to ``b``.

    Raises
    ------
    OracleBoundsError
        If a generator lies outside the working universe.
    """
    working = b.working()
    modules, index, finite, ranked = _triple_arrays(working)
    known = np.zeros(len(modules), dtype=bool)
    for g in generators:
        if g not in index:
            raise OracleBoundsError(f"generator {g} is outside the working universe")
        known[index[g]] = True
    if not known.any():
        return frozenset()
    # triples with a free part never fire from torsion modules alone
    triples = finite if not any(g.rank for g in generators) else np.concatenate([finite, ranked])
    A, B, C = triples[:, 0], triples[:, 1], triples[:, 2]
    rounds = 0
    while True:
        a, m, c = known[A], known[B], known[C]
        fresh = np.concatenate([A[~a & m & c], B[a & ~m & c], C[a & m & ~c]])
        if fresh.size == 0:
            break
        known[fresh] = True
        rounds += 1
    LOGGER.debug("fixpoint of %d generators: %d rounds, %d modules", len(generators), rounds, int(known.sum()))
    return frozenset(modules[i] for i in np.flatnonzero(known & _in_bounds(working, b)))


@dataclass(frozen=True)
class Report:
    """
    Outcome of a sandwich check.

    Attributes
    ----------
    generators : tuple of FGModule
    descriptor : SubcatDescriptor
    fixpoint : frozenset of FGModule
        Lower bound: modules reached by two-out-of-three.
    predicate : frozenset of FGModule
        Upper bound: universe members satisfying the descriptor.
    verdict : str
        "PASS" iff the two sets are equal.
    universe_size : int
    witnesses : tuple of FGModule
        The symmetric difference, in universe order.
    """
    generators: Tuple[FGModule, ...]
    descriptor: SubcatDescriptor
    fixpoint: FrozenSet[FGModule]
    predicate: FrozenSet[FGModule]
    verdict: str
    universe_size: int
    witnesses: Tuple[FGModule, ...]

    @property
    def passed(self) -> bool:
        return self.verdict == "PASS"

    @property
    def fixpoint_size(self) -> int:
        return len(self.fixpoint)

    @property
    def predicate_size(self) -> int:
        return len(self.predicate)


def sandwich_check(generators: Sequence[FGModule], b: UniverseBounds) -> Report:
    """Compare the fixpoint closure with the members of closure(generators)."""
    generators = tuple(generators)
    descriptor = closure(generators)
    universe = _universe(b)
    fixpoint = closure_fixpoint(generators, b)
    predicate = frozenset(X for X in universe if member(descriptor, X))
    witnesses = tuple(X for X in universe if (X in fixpoint) != (X in predicate))
    verdict = "FAIL" if witnesses else "PASS"
    if LOGGER.isEnabledFor(logging.INFO):
        LOGGER.info("sandwich %s for [%s]: %s", verdict, ", ".join(map(str, generators)),
                    classification_line(descriptor))
    return Report(generators, descriptor, fixpoint, predicate, verdict, len(universe), witnesses)


def sandwich_sweep(b: UniverseBounds, max_generators: int = 2) -> List[Report]:
    """Run the sandwich check on every generator multiset; return the failures."""
    universe = enumerate_modules(b)
    failures = []
    checked = 0
    for size in range(max_generators + 1):
        for generators in itertools.combinations_with_replacement(universe, size):
            report = sandwich_check(generators, b)
            checked += 1
            if not report.passed:
                LOGGER.warning("sandwich FAIL for [%s]", ", ".join(map(str, generators)))
                failures.append(report)
    LOGGER.info("sandwich sweep: %d generator sets, %d failures", checked, len(failures))
    return failures


class ClosednessResult(NamedTuple):
    counterexample: Optional[Triple] = None

    @property
    def passed(self) -> bool:
        return self.counterexample is None

    @property
    def verdict(self) -> str:
        return "PASS" if self.passed else "FAIL"


def finite_ses_triples(b: UniverseBounds) -> List[Triple]:
    """Every finite (A, B, C) in the universe admitting a short exact sequence."""
    modules = enumerate_modules(replace(b, max_rank=0))
    return list(_finite_triples(modules, b))


def check_two_three_closed(member_predicate: Callable[[FGModule], bool], b: UniverseBounds) -> ClosednessResult:
    """First finite s.e.s. triple with exactly two members in the predicate, if any."""
    for triple in finite_ses_triples(b):
        if sum(1 for X in triple if member_predicate(X)) == 2:
            return ClosednessResult(triple)
    return ClosednessResult()


class NotWideDemo(NamedTuple):
    morphism: PresentedMorphism
    kernel: FGModule
    descriptor: IMod


def demonstrate_not_wide(k: int) -> NotWideDemo:
    """
    The projection of ℤ^k onto its first coordinate, as an endomorphism.

    Source and target lie in I_k; the kernel ℤ^{k-1} does not.
    """
    if k < 2:
        raise ValueError(f"k must be at least 2, got {k}")
    free = Presentation.free(k)
    morphism = PresentedMorphism(free, free, IntMatrix.diagonal([1] + [0] * (k - 1)))
    lost = kernel(morphism)
    descriptor = IMod(k)
    assert member(descriptor, FGModule.free(k)) and not member(descriptor, lost)
    return NotWideDemo(morphism, lost, descriptor)
