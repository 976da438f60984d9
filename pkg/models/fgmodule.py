# models/fgmodule.py
"""
Finitely Generated Modules over the Integers

This module implements the structure-theorem representation of finitely
generated abelian groups and the invariants computed from it:
1. Prime, Partition, FGModule and LengthVector value types
2. Euler characteristics χ_p and length vectors
3. Presentations (generators plus a relation matrix) and conversion both ways
4. A parser for module expressions such as "Z^2 + Z/12 + (Z/2)^3"

Every FGModule is canonical: two values are equal iff the modules are
isomorphic. Composite cyclic moduli are split into prime powers.
"""

import math
import re
from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from sympy import factorint, isprime

from models.errors import DimensionMismatchError, ModuleParseError
from models.matrix import IntMatrix, smith_normal_form

INFINITE = math.inf


class Prime(int):
    """A prime ideal of ℤ: 0 (the generic point) or a positive prime."""

    GENERIC: "Prime"

    def __new__(cls, value):
        value = int(value)
        if value != 0 and (value < 0 or not isprime(value)):
            raise ValueError(f"{value} is neither 0 nor a positive prime")
        return super().__new__(cls, value)

    @property
    def is_generic(self) -> bool:
        return self == 0

    def __repr__(self) -> str:
        return f"Prime({int(self)})"

    def __str__(self) -> str:
        return str(int(self))


Prime.GENERIC = Prime(0)


class Partition(tuple):
    """Weakly decreasing tuple of positive exponents."""

    def __new__(cls, exponents: Iterable[int] = ()):
        values = tuple(sorted((int(e) for e in exponents), reverse=True))
        if any(e <= 0 for e in values):
            raise ValueError(f"partition entries must be positive, got {list(values)}")
        return super().__new__(cls, values)

    @classmethod
    def of(cls, *exponents: int) -> "Partition":
        return cls(exponents)

    @property
    def total(self) -> int:
        return sum(self)

    def merge(self, other: Iterable[int]) -> "Partition":
        return Partition(tuple(self) + tuple(other))

    def remove(self, exponent: int) -> "Partition":
        """Drop one occurrence of ``exponent``."""
        values = list(self)
        values.remove(exponent)
        return Partition(values)

    def conjugate(self) -> "Partition":
        if not self:
            return Partition()
        return Partition(sum(1 for e in self if e > i) for i in range(self[0]))

    def __repr__(self) -> str:
        return f"Partition({list(self)})"


TorsionInput = Union[Mapping[int, Iterable[int]], Iterable[Tuple[int, Iterable[int]]]]


def _normalize_torsion(torsion: TorsionInput) -> Tuple[Tuple[Prime, Partition], ...]:
    items = torsion.items() if isinstance(torsion, Mapping) else torsion
    merged: Dict[int, Partition] = {}
    for p, exponents in items:
        prime = Prime(p)
        if prime.is_generic:
            raise ValueError("torsion cannot sit at the generic prime 0")
        merged[prime] = merged.get(prime, Partition()).merge(exponents)
    return tuple((Prime(p), part) for p, part in sorted(merged.items()) if part)


@dataclass(frozen=True)
class FGModule:
    """
    A finitely generated abelian group ℤ^rank ⊕ ⊕_p ⊕_i ℤ/p^{r_i}.

    Attributes
    ----------
    rank : int
        Free rank, χ_0.
    torsion : tuple of (Prime, Partition)
        Primes ascending, no empty partitions. Any mapping or pair list is
        accepted on construction and normalized.
    """
    rank: int = 0
    torsion: Tuple[Tuple[Prime, Partition], ...] = ()

    def __post_init__(self):
        if int(self.rank) < 0:
            raise ValueError(f"rank must be nonnegative, got {self.rank}")
        object.__setattr__(self, "rank", int(self.rank))
        object.__setattr__(self, "torsion", _normalize_torsion(self.torsion))

    # Constructors

    @classmethod
    def of(cls, rank: int = 0, torsion: Optional[TorsionInput] = None) -> "FGModule":
        return cls(rank, torsion or ())

    @classmethod
    def zero(cls) -> "FGModule":
        return cls()

    @classmethod
    def free(cls, rank: int) -> "FGModule":
        return cls(rank)

    @classmethod
    def cyclic(cls, n: int) -> "FGModule":
        """ℤ/n split into prime powers (n ≥ 2)."""
        n = int(n)
        if n < 2:
            raise ValueError(f"cyclic modulus must be at least 2, got {n}")
        return cls(0, [(p, [e]) for p, e in factorint(n).items()])

    @classmethod
    def elementary(cls, p: int, count: int) -> "FGModule":
        """(ℤ/p)^count."""
        return cls(0, {p: [1] * count}) if count else cls()

    # Accessors

    def torsion_map(self) -> Dict[Prime, Partition]:
        return dict(self.torsion)

    def partition(self, p: int) -> Partition:
        return self.torsion_map().get(p, Partition())

    @property
    def primes(self) -> Tuple[Prime, ...]:
        return tuple(p for p, _ in self.torsion)

    @property
    def is_torsion(self) -> bool:
        return self.rank == 0

    @property
    def is_zero(self) -> bool:
        return self.rank == 0 and not self.torsion

    def torsion_part(self) -> "FGModule":
        return FGModule(0, self.torsion)

    def free_part(self) -> "FGModule":
        return FGModule(self.rank)

    def primary_part(self, p: int) -> "FGModule":
        return FGModule(0, [(q, part) for q, part in self.torsion if q == p])

    def without_prime(self, p: int) -> "FGModule":
        return FGModule(self.rank, [(q, part) for q, part in self.torsion if q != p])

    def cyclic_moduli(self) -> List[int]:
        """Orders of the cyclic summands: primes ascending, exponents descending."""
        return [p ** e for p, part in self.torsion for e in part]

    def order(self) -> int:
        if self.rank:
            raise ValueError(f"{self} is infinite")
        return math.prod(self.cyclic_moduli())

    def total_length(self) -> int:
        return sum(part.total for _, part in self.torsion)

    def __str__(self) -> str:
        terms = []
        if self.rank == 1:
            terms.append("Z")
        elif self.rank > 1:
            terms.append(f"Z^{self.rank}")
        terms.extend(f"Z/{m}" for m in self.cyclic_moduli())
        return " + ".join(terms) if terms else "0"


class LengthVector(tuple):
    """Sorted (prime, length) pairs with no zero lengths."""

    def __new__(cls, coords: TorsionInput = ()):
        items = coords.items() if isinstance(coords, Mapping) else coords
        totals: Dict[int, int] = {}
        for p, n in items:
            if int(n) < 0:
                raise ValueError(f"negative length {n} at {p}")
            totals[Prime(p)] = totals.get(Prime(p), 0) + int(n)
        return super().__new__(cls, tuple((p, n) for p, n in sorted(totals.items()) if n))

    def as_dict(self) -> Dict[Prime, int]:
        return dict(self)

    def get(self, p: int) -> int:
        return self.as_dict().get(p, 0)

    def restricted(self, support: Sequence[int]) -> Tuple[int, ...]:
        """Coordinates in the order of ``support``."""
        values = self.as_dict()
        return tuple(values.get(p, 0) for p in support)

    @property
    def primes(self) -> Tuple[Prime, ...]:
        return tuple(p for p, _ in self)


def chi(X: FGModule, p: int) -> Union[int, float]:
    """
    Euler characteristic χ_p.

    Parameters
    ----------
    X : FGModule
    p : int
        0 or a prime.

    Returns
    -------
    int or INFINITE
        rank(X) for p = 0; the p-length of Tor(X) for a torsion module; INFINITE
        when X has positive rank and p ≠ 0.
    """
    p = Prime(p)
    if p.is_generic:
        return X.rank
    if X.rank > 0:
        return INFINITE
    return X.partition(p).total


def length_vector(X: FGModule) -> LengthVector:
    if X.rank > 0:
        raise ValueError(f"length vector of {X} is undefined: rank {X.rank} > 0")
    return LengthVector((p, part.total) for p, part in X.torsion)


def direct_sum(*modules: FGModule) -> FGModule:
    return FGModule(sum(m.rank for m in modules),
                    [pair for m in modules for pair in m.torsion])


@dataclass(frozen=True)
class Presentation:
    """
    Cokernel of a relation matrix: ℤ^generators / (column span of relations).

    Attributes
    ----------
    generators : int
    relations : IntMatrix
        generators × (number of relations).
    """
    generators: int
    relations: IntMatrix

    def __post_init__(self):
        if self.relations.rows != self.generators:
            raise DimensionMismatchError(
                f"relation matrix has {self.relations.rows} rows for {self.generators} generators")

    @classmethod
    def diagonal(cls, values: Sequence[int]) -> "Presentation":
        return cls(len(values), IntMatrix.diagonal(values))

    @classmethod
    def cyclic(cls, n: int) -> "Presentation":
        return cls.diagonal([n])

    @classmethod
    def free(cls, rank: int) -> "Presentation":
        return cls.diagonal([0] * rank)

    @classmethod
    def direct_sum(cls, *presentations: "Presentation") -> "Presentation":
        return cls(sum(p.generators for p in presentations),
                   IntMatrix.block_diag(*(p.relations for p in presentations)))


def from_presentation(P: Presentation) -> FGModule:
    """Read the invariant form off the Smith normal form of the relations."""
    snf = smith_normal_form(P.relations)
    factors = snf.invariant_factors
    torsion = [(p, [e]) for d in factors if d > 1 for p, e in factorint(d).items()]
    return FGModule(P.generators - len(factors), torsion)


def to_presentation(X: FGModule) -> Presentation:
    """Standard presentation: one generator per summand, diagonal relations."""
    return Presentation.diagonal([0] * X.rank + X.cyclic_moduli())


# Module expressions

_TOKEN = re.compile(r"\s*(?:(\d+)|(.))")


def _tokenize(text: str) -> List[str]:
    tokens = []
    position = 0
    text = text.rstrip()
    while position < len(text):
        match = _TOKEN.match(text, position)
        number, symbol = match.groups()
        token = number if number is not None else symbol
        if symbol is not None and symbol not in "Z+^/()":
            raise ModuleParseError(f"unexpected character {symbol!r} at position {match.start(2)}")
        tokens.append(token)
        position = match.end()
    return tokens


class _ExpressionParser:
    """Recursive-descent parser for module expressions."""

    def __init__(self, text: str, max_modulus: Optional[int]):
        self.text = text
        self.tokens = _tokenize(text)
        self.position = 0
        self.max_modulus = max_modulus

    def peek(self) -> Optional[str]:
        return self.tokens[self.position] if self.position < len(self.tokens) else None

    def take(self, expected: Optional[str] = None) -> str:
        token = self.peek()
        if token is None:
            raise ModuleParseError(f"unexpected end of expression in {self.text!r}")
        if expected is not None and token != expected:
            raise ModuleParseError(f"expected {expected!r} but found {token!r} in {self.text!r}")
        self.position += 1
        return token

    def natural(self) -> int:
        token = self.take()
        if not token.isdigit() or int(token) == 0:
            raise ModuleParseError(f"expected a positive integer but found {token!r} in {self.text!r}")
        return int(token)

    def parse(self) -> FGModule:
        module = self.expression()
        if self.peek() is not None:
            raise ModuleParseError(f"trailing input {self.peek()!r} in {self.text!r}")
        return module

    def expression(self) -> FGModule:
        if self.peek() is not None and self.peek().isdigit():
            if self.take() != "0":
                raise ModuleParseError(f"only '0' may stand alone as a number in {self.text!r}")
            return FGModule.zero()
        terms = [self.term()]
        while self.peek() == "+":
            self.take("+")
            terms.append(self.term())
        return direct_sum(*terms)

    def term(self) -> FGModule:
        token = self.peek()
        if token == "Z":
            self.take()
            if self.peek() == "^":
                self.take()
                return FGModule.free(self.natural())
            if self.peek() == "/":
                self.take()
                return self.modulus()
            return FGModule.free(1)
        if token == "(":
            self.take()
            inner = self.expression()
            self.take(")")
            self.take("^")
            return direct_sum(*([inner] * self.natural()))
        raise ModuleParseError(f"expected a term but found {token!r} in {self.text!r}")

    def modulus(self) -> FGModule:
        token = self.take()
        if not token.isdigit():
            raise ModuleParseError(f"expected a modulus but found {token!r} in {self.text!r}")
        n = int(token)
        if n <= 1:
            raise ModuleParseError(f"Z/{n} is not allowed: moduli must be at least 2")
        if self.max_modulus is not None and n > self.max_modulus:
            raise ModuleParseError(f"modulus {n} exceeds the limit {self.max_modulus}")
        return FGModule.cyclic(n)


def parse_module(text: str, max_modulus: Optional[int] = None) -> FGModule:
    """
    Parse a module expression.

    Grammar::

        expr := term ("+" term)* | "0"
        term := "Z" | "Z^" nat | "Z/" nat | "(" expr ")^" nat

    Parameters
    ----------
    text : str
    max_modulus : int, optional
        Reject cyclic moduli above this bound.

    Returns
    -------
    FGModule

    Raises
    ------
    ModuleParseError
        On malformed input, Z/0, Z/1 or an oversized modulus.
    """
    if not text or not text.strip():
        raise ModuleParseError("empty module expression")
    return _ExpressionParser(text, max_modulus).parse()
