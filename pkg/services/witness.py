# services/witness.py
"""
Witness Engine

This module derives a member of a closure from the generators by explicit,
verified short exact sequences, and checks such derivations.

Features:
1. Positive-rank generators: cyclic torsion from multiplication sequences,
   free parts by stripping torsion, the gcd rank by Euclid on split sequences
2. Torsion generators: descent to elementary modules, an exact integer
   combination of length vectors realised on elementary modules, and the
   target shape rebuilt by merging cyclic summands
3. verify_derivation, which replays every step
"""

import logging
from typing import Dict, List, Optional, Sequence, Tuple

from models.derivation import RULE_POSITIONS, Derivation, DerivationStep, Position, Premise, Rule
from models.descriptor import IMod, SubcatDescriptor
from models.errors import DimensionMismatchError, IllDefinedMorphismError, NotInClosureError
from models.fgmodule import FGModule, length_vector
from models.lattice import lattice_coordinates, lattice_from_generators
from models.matrix import IntMatrix, hermite_normal_form
from services.ses import (
    SES,
    FailureReason,
    Verdict,
    family_mult_cyclic,
    family_split,
    family_step1,
    family_step2,
    family_torsion_strip,
    pad_ses,
    ses_modules,
    verify_ses,
)
from services.subcat import classification_line, closure_invariants, member

LOGGER = logging.getLogger(__name__)


class _DerivationBuilder:
    """Appends steps and remembers which modules are already available."""

    def __init__(self, generators: Sequence[FGModule]):
        self.generators = tuple(generators)
        self.steps: List[DerivationStep] = []
        self.available: Dict[FGModule, int] = {}

    def _append(self, step: DerivationStep) -> int:
        self.steps.append(step)
        index = len(self.steps) - 1
        self.available.setdefault(step.conclusion, index)
        return index

    def axiom(self, generator: FGModule) -> int:
        if generator in self.available:
            return self.available[generator]
        return self._append(DerivationStep(Rule.AXIOM, (), None, generator))

    def infer(self, rule: Rule, ses: SES) -> FGModule:
        """Apply a rule whose premises are already available; return the conclusion."""
        modules = dict(zip(Position, ses_modules(ses)))
        premise_positions, conclusion_position = RULE_POSITIONS[rule]
        conclusion = modules[conclusion_position]
        if conclusion in self.available:
            return conclusion
        premises = tuple(Premise(self.available[modules[position]], position)
                         for position in premise_positions)
        self._append(DerivationStep(rule, premises, ses, conclusion))
        return conclusion

    def split(self, X: FGModule, Y: FGModule) -> FGModule:
        if X.is_zero:
            return Y
        if Y.is_zero:
            return X
        return self.infer(Rule.SUM_SPLIT, family_split(X, Y))

    def sum_of(self, modules: Sequence[FGModule]) -> FGModule:
        total = FGModule.zero()
        for X in modules:
            total = self.split(total, X)
        return total

    def multiple(self, X: FGModule, count: int) -> FGModule:
        """X^count by doubling."""
        result, power = FGModule.zero(), X
        while count:
            if count & 1:
                result = self.split(result, power)
            count >>= 1
            if count:
                power = self.split(power, power)
        return result

    def zero_from(self, X: FGModule) -> FGModule:
        """0 as the quotient of X ⊂ X."""
        return self.infer(Rule.QUOTIENT_INFER, family_split(X, FGModule.zero()))

    def finish(self, target: FGModule) -> Derivation:
        if not self.steps or self.steps[-1].conclusion != target:
            # repeat the step that concluded the target so it comes last
            self._append(self.steps[self.available[target]])
        return Derivation(self.generators, tuple(self.steps), target)


def _split_off(X: FGModule, p: int, exponents: Sequence[int]) -> FGModule:
    """X with one cyclic summand ℤ/p^e removed for each listed e."""
    partition = X.partition(p)
    for e in exponents:
        partition = partition.remove(e)
    return FGModule(X.rank, [(q, part) for q, part in X.torsion if q != p] + [(p, partition)])


def _check_target(generators: Sequence[FGModule], target: FGModule) -> SubcatDescriptor:
    invariants = closure_invariants(generators)
    d = invariants.descriptor
    if member(d, target):
        return d
    if invariants.kind == "empty":
        raise NotInClosureError(NotInClosureError.EMPTY, "there are no generators")
    if invariants.kind == "rank":
        raise NotInClosureError(NotInClosureError.RANK,
                                f"{target} has rank {target.rank}, not a multiple of {invariants.k}")
    if target.rank > 0:
        raise NotInClosureError(NotInClosureError.RANK,
                                f"{target} has rank {target.rank}, closure is {classification_line(d)}")
    raise NotInClosureError(NotInClosureError.LATTICE,
                            f"length vector of {target} is not in {classification_line(d)}")


def derive_witness(generators: Sequence[FGModule], target: FGModule) -> Derivation:
    """
    Derive target from the generators by verified short exact sequences.

    Parameters
    ----------
    generators : sequence of FGModule
    target : FGModule

    Returns
    -------
    Derivation
        Every step verifies; the last step concludes the target.

    Raises
    ------
    NotInClosureError
        If the target is not in the closure, naming the violated invariant.
    """
    generators = list(generators)
    d = _check_target(generators, target)
    builder = _DerivationBuilder(generators)
    if target in generators:
        builder.axiom(target)
    elif isinstance(d, IMod):
        _derive_positive_rank(builder, generators, target, d.k)
    else:
        _derive_torsion(builder, generators, target)
    derivation = builder.finish(target)
    LOGGER.info("derived %s from %d generators in %d steps", target, len(generators), len(derivation))
    return derivation


def _derive_positive_rank(builder: _DerivationBuilder, generators: List[FGModule],
                          target: FGModule, k: int) -> None:
    free_generators = [g for g in generators if g.rank > 0]
    for g in free_generators:
        builder.axiom(g)
    anchor = free_generators[0]

    def cyclic(p: int, e: int) -> FGModule:
        return builder.infer(Rule.QUOTIENT_INFER, family_mult_cyclic(anchor, p, e))

    def torsion_of(X: FGModule) -> FGModule:
        return builder.sum_of([cyclic(p, e) for p, part in X.torsion for e in part])

    ranks = []
    for g in free_generators:
        if g.torsion:
            torsion_of(g)
            builder.infer(Rule.QUOTIENT_INFER, family_torsion_strip(g))
        ranks.append(g.rank)

    # Euclid by subtraction: Z^b ⊂ Z^a splits off Z^(a-b)
    a = ranks[0]
    for b in ranks[1:]:
        while a != b:
            big, small = max(a, b), min(a, b)
            builder.infer(Rule.QUOTIENT_INFER, family_split(FGModule.free(small), FGModule.free(big - small)))
            a, b = small, big - small
    assert a == k

    torsion = torsion_of(target)
    free = builder.multiple(FGModule.free(k), target.rank // k)
    if free.is_zero and torsion.is_zero:
        builder.zero_from(anchor)
        return
    builder.split(free, torsion)


def _descend_to_elementary(builder: _DerivationBuilder, X: FGModule) -> FGModule:
    """Trade ℤ/p^r for ℤ/p^{r-1} ⊕ ℤ/p until every exponent is 1."""
    while True:
        p, part = next(((p, part) for p, part in X.torsion if part[0] >= 2), (None, None))
        if p is None:
            return X
        r = part[0]
        G = _split_off(X, p, [r])
        first, second = family_step1(p, r)
        builder.infer(Rule.MIDDLE_INFER, pad_ses(first, G))
        X = builder.infer(Rule.QUOTIENT_INFER, pad_ses(second, G))


def _elementary(vector: Dict[int, int]) -> FGModule:
    return FGModule(0, {p: [1] * n for p, n in vector.items() if n})


def _combination(support: Sequence[int], vectors: List[Tuple[int, ...]], tau: Tuple[int, ...]) -> List[int]:
    """Integers c with Σ c_j · vectors[j] = tau."""
    H, U = hermite_normal_form(IntMatrix(vectors, rows=len(vectors), cols=len(support)))
    rank = sum(1 for v in H.row_vectors() if any(v))
    lattice = lattice_from_generators(support, vectors)
    a = lattice_coordinates(lattice, tau)
    return [sum(a[i] * U[i, j] for i in range(rank)) for j in range(len(vectors))]


def _build_shape(builder: _DerivationBuilder, X: FGModule, target: FGModule) -> FGModule:
    """Merge ℤ/p summands of an elementary module into the target's partitions."""
    for p, shape in target.torsion:
        for part in shape:
            r = 1
            while r < part:
                G = _split_off(X, p, [1, r])
                first, second = family_step2(p, r)
                builder.infer(Rule.MIDDLE_INFER, pad_ses(first, G))
                X = builder.infer(Rule.QUOTIENT_INFER, pad_ses(second, G))
                r += 1
    return X


def _derive_torsion(builder: _DerivationBuilder, generators: List[FGModule], target: FGModule) -> None:
    nonzero = [g for g in generators if not g.is_zero]
    if target.is_zero:
        builder.axiom(nonzero[0])
        builder.zero_from(nonzero[0])
        return
    support = sorted({p for g in nonzero for p in g.primes})
    vectors = [length_vector(g).restricted(support) for g in nonzero]
    tau = length_vector(target).restricted(support)
    coefficients = _combination(support, vectors, tau)

    positive_parts, negative_parts = [], []
    for g, c in zip(nonzero, coefficients):
        if c == 0:
            continue
        builder.axiom(g)
        elementary = _descend_to_elementary(builder, g)
        parts = positive_parts if c > 0 else negative_parts
        parts.append(builder.multiple(elementary, abs(c)))

    plus = builder.sum_of(positive_parts)
    minus = builder.sum_of(negative_parts)
    wanted = _elementary(dict(zip(support, tau)))
    if minus.is_zero:
        elementary_target = plus
    else:
        # 0 → E(N) → E(P) → E(τ) → 0
        elementary_target = builder.infer(Rule.QUOTIENT_INFER, family_split(minus, wanted))
    assert elementary_target == wanted
    _build_shape(builder, elementary_target, target)


def _check_step(step: DerivationStep, index: int, steps: Sequence[DerivationStep],
                generators: Sequence[FGModule]) -> Optional[Verdict]:
    if step.rule is Rule.AXIOM:
        if step.premises or step.ses is not None:
            return Verdict.fail(FailureReason.PREMISE_MISMATCH, "an axiom takes no premises", index)
        if step.conclusion not in generators:
            return Verdict.fail(FailureReason.NOT_A_GENERATOR, f"{step.conclusion} is not a generator", index)
        return None
    premise_positions, conclusion_position = RULE_POSITIONS[step.rule]
    if step.ses is None:
        return Verdict.fail(FailureReason.PREMISE_MISMATCH, f"{step.rule.value} needs a sequence", index)
    if sorted(p.position.value for p in step.premises) != sorted(p.value for p in premise_positions):
        return Verdict.fail(FailureReason.PREMISE_MISMATCH,
                            f"{step.rule.value} takes premises in positions "
                            f"{[p.value for p in premise_positions]}", index)
    for premise in step.premises:
        if not 0 <= premise.index < index:
            return Verdict.fail(FailureReason.UNKNOWN_PREMISE, f"no earlier step {premise.index}", index)
    try:
        verdict = verify_ses(step.ses)
    except (IllDefinedMorphismError, DimensionMismatchError) as error:
        return Verdict.fail(FailureReason.ILL_DEFINED, str(error), index)
    if not verdict:
        return Verdict.fail(verdict.reason, verdict.detail, index)
    modules = dict(zip(Position, ses_modules(step.ses)))
    for premise in step.premises:
        if modules[premise.position] != steps[premise.index].conclusion:
            return Verdict.fail(FailureReason.PREMISE_MISMATCH,
                                f"{premise.position.value} is {modules[premise.position]}, step "
                                f"{premise.index} concluded {steps[premise.index].conclusion}", index)
    if modules[conclusion_position] != step.conclusion:
        return Verdict.fail(FailureReason.CONCLUSION_MISMATCH,
                            f"{conclusion_position.value} is {modules[conclusion_position]}, "
                            f"not {step.conclusion}", index)
    return None


def verify_derivation(d: Derivation) -> Verdict:
    """
    Replay a derivation.

    Every step is checked for premise availability and positions, its sequence
    is verified, and the modules in the sequence must match the premises and
    the conclusion. Failures are returned, never raised.
    """
    if not d.steps:
        return Verdict.fail(FailureReason.EMPTY_DERIVATION, "no steps")
    for index, step in enumerate(d.steps):
        failure = _check_step(step, index, d.steps, d.generators)
        if failure is not None:
            LOGGER.warning("derivation fails at step %d: %s", index, failure)
            return failure
    if d.steps[-1].conclusion != d.target:
        return Verdict.fail(FailureReason.TARGET_MISMATCH,
                            f"last step concludes {d.steps[-1].conclusion}, target is {d.target}")
    return Verdict.ok()
