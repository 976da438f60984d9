# models/derivation.py
"""
Derivations

A derivation records how a target module is obtained from generators by
repeated use of the two-out-of-three rule. Each step names a rule, the earlier
steps it uses as premises (with the position each premise occupies in the
step's short exact sequence) and the module it concludes.
"""

from dataclasses import dataclass
from enum import Enum
from typing import TYPE_CHECKING, Dict, Optional, Tuple

from models.fgmodule import FGModule

if TYPE_CHECKING:
    from services.ses import SES


class Rule(str, Enum):
    AXIOM = "Axiom"
    SUM_SPLIT = "SumSplit"
    SUB_INFER = "SubInfer"
    QUOTIENT_INFER = "QuotientInfer"
    MIDDLE_INFER = "MiddleInfer"


class Position(str, Enum):
    SUB = "sub"
    MIDDLE = "middle"
    QUOTIENT = "quotient"


# premise positions and conclusion position of every non-axiom rule
RULE_POSITIONS: Dict[Rule, Tuple[Tuple[Position, Position], Position]] = {
    Rule.SUM_SPLIT: ((Position.SUB, Position.QUOTIENT), Position.MIDDLE),
    Rule.MIDDLE_INFER: ((Position.SUB, Position.QUOTIENT), Position.MIDDLE),
    Rule.SUB_INFER: ((Position.MIDDLE, Position.QUOTIENT), Position.SUB),
    Rule.QUOTIENT_INFER: ((Position.SUB, Position.MIDDLE), Position.QUOTIENT),
}


@dataclass(frozen=True)
class Premise:
    index: int
    position: Position


@dataclass(frozen=True)
class DerivationStep:
    """
    One rule application.

    Attributes
    ----------
    rule : Rule
    premises : tuple of Premise
        Indices of earlier steps; empty for an axiom.
    ses : SES or None
        None exactly for an axiom.
    conclusion : FGModule
    """
    rule: Rule
    premises: Tuple[Premise, ...]
    ses: Optional["SES"]
    conclusion: FGModule


@dataclass(frozen=True)
class Derivation:
    generators: Tuple[FGModule, ...]
    steps: Tuple[DerivationStep, ...]
    target: FGModule

    def __len__(self) -> int:
        return len(self.steps)
