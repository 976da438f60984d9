# models/errors.py
"""
Error Types

Exceptions raised by the models and services. Everything derives from
TwoThreeError so callers (the command line in particular) can tell library
failures apart from programming errors.
"""


class TwoThreeError(Exception):
    """Base class for all library errors."""


class ModuleParseError(TwoThreeError, ValueError):
    """A module expression or JSON payload could not be parsed."""


class DimensionMismatchError(TwoThreeError, ValueError):
    """Vector, matrix or lattice shapes do not agree."""


class IllDefinedMorphismError(TwoThreeError, ValueError):
    """A presented morphism does not send relations to relations."""


class DescriptorError(TwoThreeError, ValueError):
    """An operation received a descriptor variant it does not accept."""


class OracleBoundsError(TwoThreeError, ValueError):
    """An oracle precondition failed (infinite module, order above the cap)."""


class NotInClosureError(TwoThreeError):
    """
    The requested target is not a member of the closure of the generators.

    Attributes
    ----------
    invariant : str
        Which invariant the target violates: 'empty closure', 'rank class'
        or 'lattice membership'.
    """

    EMPTY = "empty closure"
    RANK = "rank class"
    LATTICE = "lattice membership"

    def __init__(self, invariant: str, message: str):
        super().__init__(f"{invariant}: {message}")
        self.invariant = invariant
