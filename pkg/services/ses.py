# services/ses.py
"""
Short Exact Sequence Service

This module implements morphisms between presented modules and short exact
sequences built from them:
1. PresentedMorphism, with well-definedness, kernel and cokernel
2. SES and its verification (injective, surjective, exact in the middle)
3. The constructive families: split sequences, multiplication onto a cyclic
   quotient, torsion stripping, and the two length-preserving reshuffles used
   to trade exponents inside one primary component
4. Componentwise direct sums of sequences (padding by a fixed module)
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple

from models.errors import DimensionMismatchError, IllDefinedMorphismError
from models.fgmodule import FGModule, Presentation, from_presentation, to_presentation
from models.lattice import lattice_contains, lattice_coordinates, lattice_from_generators
from models.matrix import IntMatrix, integer_kernel

LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True)
class PresentedMorphism:
    """
    A homomorphism coker(R_s) → coker(R_t) given on generators.

    Attributes
    ----------
    source, target : Presentation
    matrix : IntMatrix
        target.generators × source.generators; column j is the image of
        source generator j.
    """
    source: Presentation
    target: Presentation
    matrix: IntMatrix

    def __post_init__(self):
        expected = (self.target.generators, self.source.generators)
        if self.matrix.shape != expected:
            raise DimensionMismatchError(f"morphism matrix has shape {self.matrix.shape}, expected {expected}")


def _column_span_contains(R: IntMatrix, vectors) -> bool:
    span = lattice_from_generators(range(R.rows), R.columns())
    return all(lattice_contains(span, v) for v in vectors)


def is_well_defined(m: PresentedMorphism) -> bool:
    """True iff the matrix sends every source relation into the target relations."""
    images = m.matrix @ m.source.relations
    return _column_span_contains(m.target.relations, images.columns())


def _require_well_defined(m: PresentedMorphism) -> None:
    if not is_well_defined(m):
        raise IllDefinedMorphismError("the matrix does not send source relations to target relations")


def cokernel(m: PresentedMorphism) -> FGModule:
    """target / image, presented by the target relations plus the image columns."""
    _require_well_defined(m)
    return from_presentation(Presentation(m.target.generators,
                                          IntMatrix.hstack(m.target.relations, m.matrix)))


def kernel(m: PresentedMorphism) -> FGModule:
    """
    Invariant form of the kernel of a presented morphism.

    The lifts N = {x : F·x ∈ span(R_t)} form a lattice containing span(R_s);
    the kernel is N / span(R_s), presented by the coordinates of R_s in a
    basis of N.

    Raises
    ------
    IllDefinedMorphismError
        If the morphism is not well defined.
    """
    _require_well_defined(m)
    n = m.source.generators
    if n == 0:
        return FGModule.zero()
    solutions = integer_kernel(IntMatrix.hstack(m.matrix, -m.target.relations))
    lifts = lattice_from_generators(range(n), [v[:n] for v in solutions.columns()])
    coordinates = []
    for relation in m.source.relations.columns():
        coordinates.append(_coordinates(lifts, relation))
    X = IntMatrix(coordinates, rows=len(coordinates), cols=lifts.rank).transpose()
    return from_presentation(Presentation(lifts.rank, X))


def _coordinates(lattice, v):
    c = lattice_coordinates(lattice, v)
    if c is None:
        raise IllDefinedMorphismError("a source relation is not a lift of the target relations")
    return c


class FailureReason(str, Enum):
    F_NOT_INJECTIVE = "f not injective"
    G_NOT_SURJECTIVE = "g not surjective"
    IMAGE_NOT_IN_KERNEL = "image not in kernel"
    KERNEL_NOT_IN_IMAGE = "kernel not in image"
    ILL_DEFINED = "ill-defined map"
    UNKNOWN_PREMISE = "unknown premise"
    PREMISE_MISMATCH = "premise mismatch"
    CONCLUSION_MISMATCH = "conclusion mismatch"
    NOT_A_GENERATOR = "not a generator"
    TARGET_MISMATCH = "target mismatch"
    EMPTY_DERIVATION = "empty derivation"


@dataclass(frozen=True)
class Verdict:
    """Outcome of verifying a sequence or a derivation."""
    verified: bool
    reason: Optional[FailureReason] = None
    step: Optional[int] = None
    detail: str = ""

    @classmethod
    def ok(cls) -> "Verdict":
        return cls(True)

    @classmethod
    def fail(cls, reason: FailureReason, detail: str = "", step: Optional[int] = None) -> "Verdict":
        return cls(False, reason, step, detail)

    def __bool__(self) -> bool:
        return self.verified

    def __str__(self) -> str:
        if self.verified:
            return "Verified"
        where = f" at step {self.step}" if self.step is not None else ""
        detail = f": {self.detail}" if self.detail else ""
        return f"Failure ({self.reason.value}){where}{detail}"


@dataclass(frozen=True)
class SES:
    """0 → A →f B →g C → 0 over presentations."""
    f: PresentedMorphism
    g: PresentedMorphism

    def __post_init__(self):
        if self.f.target != self.g.source:
            raise DimensionMismatchError("f and g do not share the middle presentation")

    @property
    def A(self) -> Presentation:
        return self.f.source

    @property
    def B(self) -> Presentation:
        return self.f.target

    @property
    def C(self) -> Presentation:
        return self.g.target


def make_ses(A: Presentation, B: Presentation, C: Presentation, f, g) -> SES:
    """Build an SES from presentations and matrices given as nested lists or IntMatrix."""
    f = f if isinstance(f, IntMatrix) else IntMatrix(f, rows=B.generators, cols=A.generators)
    g = g if isinstance(g, IntMatrix) else IntMatrix(g, rows=C.generators, cols=B.generators)
    return SES(PresentedMorphism(A, B, f), PresentedMorphism(B, C, g))


def ses_modules(s: SES) -> Tuple[FGModule, FGModule, FGModule]:
    return from_presentation(s.A), from_presentation(s.B), from_presentation(s.C)


def verify_ses(s: SES) -> Verdict:
    """
    Check exactness of 0 → A → B → C → 0.

    Returns
    -------
    Verdict
        Verified, or the first failed condition in the order: f injective,
        g surjective, g∘f = 0, kernel of g inside the image of f.

    Raises
    ------
    IllDefinedMorphismError
        If f or g does not respect relations.
    """
    _require_well_defined(s.f)
    _require_well_defined(s.g)
    lost = kernel(s.f)
    if not lost.is_zero:
        return Verdict.fail(FailureReason.F_NOT_INJECTIVE, f"kernel of f is {lost}")
    missed = cokernel(s.g)
    if not missed.is_zero:
        return Verdict.fail(FailureReason.G_NOT_SURJECTIVE, f"cokernel of g is {missed}")
    composite = s.g.matrix @ s.f.matrix
    if not _column_span_contains(s.C.relations, composite.columns()):
        return Verdict.fail(FailureReason.IMAGE_NOT_IN_KERNEL, "g∘f is not zero")
    # g induces B / im f → C; exact iff that map is injective
    quotient = Presentation(s.B.generators, IntMatrix.hstack(s.B.relations, s.f.matrix))
    residue = kernel(PresentedMorphism(quotient, s.C, s.g.matrix))
    if not residue.is_zero:
        return Verdict.fail(FailureReason.KERNEL_NOT_IN_IMAGE, f"ker g / im f is {residue}")
    return Verdict.ok()


def direct_sum_ses(s1: SES, s2: SES) -> SES:
    """Componentwise direct sum of two sequences."""
    return make_ses(Presentation.direct_sum(s1.A, s2.A),
                    Presentation.direct_sum(s1.B, s2.B),
                    Presentation.direct_sum(s1.C, s2.C),
                    IntMatrix.block_diag(s1.f.matrix, s2.f.matrix),
                    IntMatrix.block_diag(s1.g.matrix, s2.g.matrix))


def family_split(A: FGModule, B: FGModule) -> SES:
    """0 → A → A ⊕ B → B → 0 with inclusion and projection."""
    PA, PB = to_presentation(A), to_presentation(B)
    a, b = PA.generators, PB.generators
    f = IntMatrix.vstack(IntMatrix.identity(a), IntMatrix.zeros(b, a))
    g = IntMatrix.hstack(IntMatrix.zeros(b, a), IntMatrix.identity(b))
    return make_ses(PA, Presentation.direct_sum(PA, PB), PB, f, g)


def pad_ses(s: SES, G: FGModule) -> SES:
    """s ⊕ (0 → G → G ⊕ G → G → 0)."""
    if G.is_zero:
        return s
    return direct_sum_ses(s, family_split(G, G))


def family_mult_cyclic(M: FGModule, p: int, t: int) -> SES:
    """
    0 → M → M → ℤ/p^t → 0, multiplying the first free coordinate by p^t.

    Raises
    ------
    ValueError
        If M has rank 0 or t < 1.
    """
    if M.rank < 1:
        raise ValueError(f"{M} has no free summand to multiply")
    if t < 1:
        raise ValueError(f"exponent must be positive, got {t}")
    P = to_presentation(M)
    n = P.generators
    f = IntMatrix.diagonal([p ** t] + [1] * (n - 1))
    g = IntMatrix([[1] + [0] * (n - 1)])
    return make_ses(P, P, Presentation.cyclic(p ** t), f, g)


def family_torsion_strip(M: FGModule) -> SES:
    """0 → Tor(M) → M → ℤ^rank → 0."""
    P = to_presentation(M)
    r, k = M.rank, P.generators - M.rank
    f = IntMatrix.vstack(IntMatrix.zeros(r, k), IntMatrix.identity(k))
    g = IntMatrix.hstack(IntMatrix.identity(r), IntMatrix.zeros(r, k))
    return make_ses(to_presentation(M.torsion_part()), P, Presentation.free(r), f, g)


def _check_p_torsion(p: int, G: FGModule) -> None:
    if G.rank or set(G.primes) - {p}:
        raise ValueError(f"padding module {G} is not {p}-torsion")


def family_step1(p: int, r: int, G: FGModule = FGModule()) -> Tuple[SES, SES]:
    """
    Two sequences with sub ℤ/p^r ⊕ G and middle ℤ/p^{r-1} ⊕ ℤ/p^{r+1} ⊕ G ⊕ G.

    The first has quotient ℤ/p^r ⊕ G, the second ℤ/p^{r-1} ⊕ ℤ/p ⊕ G. With
    middle generators u (order p^{r-1}) and v (order p^{r+1}), the sub is
    generated by u + p·v in the first and by p·v in the second.
    """
    if r < 2:
        raise ValueError(f"step 1 needs r >= 2, got {r}")
    _check_p_torsion(p, G)
    A = Presentation.cyclic(p ** r)
    B = Presentation.diagonal([p ** (r - 1), p ** (r + 1)])
    first = make_ses(A, B, Presentation.cyclic(p ** r), [[1], [p]], [[-p, 1]])
    second = make_ses(A, B, Presentation.diagonal([p ** (r - 1), p]), [[0], [p]], [[1, 0], [0, 1]])
    return pad_ses(first, G), pad_ses(second, G)


def family_step2(p: int, r: int, G: FGModule = FGModule()) -> Tuple[SES, SES]:
    """
    Two sequences with sub ℤ/p ⊕ ℤ/p^r ⊕ G and middle
    ℤ/p ⊕ ℤ/p^{r+1} ⊕ ℤ/p^r ⊕ G ⊕ G.

    The first has quotient ℤ/p ⊕ ℤ/p^r ⊕ G, the second ℤ/p^{r+1} ⊕ G, so
    together they merge ℤ/p and ℤ/p^r into ℤ/p^{r+1}.
    """
    if r < 1:
        raise ValueError(f"step 2 needs r >= 1, got {r}")
    _check_p_torsion(p, G)
    A = Presentation.diagonal([p, p ** r])
    B = Presentation.diagonal([p, p ** (r + 1), p ** r])
    first = make_ses(A, B, Presentation.diagonal([p, p ** r]),
                     [[0, 0], [p ** r, 0], [0, 1]],
                     [[1, 0, 0], [0, 1, 0]])
    second = make_ses(A, B, Presentation.cyclic(p ** (r + 1)),
                      [[1, 0], [0, 0], [0, 1]],
                      [[0, 1, 0]])
    return pad_ses(first, G), pad_ses(second, G)
