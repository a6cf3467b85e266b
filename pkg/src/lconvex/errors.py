"""Exception hierarchy shared by every module.

Violations carry a ``witness`` attribute holding the offending indices or
objects so callers (and the CLI) can serialize them.
"""


class LConvexError(Exception):
    """Base class for all library errors."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


# quantale

class QuantaleError(LConvexError):
    pass


class NotALattice(QuantaleError):
    pass


class NotCommutative(QuantaleError):
    pass


class NotAssociative(QuantaleError):
    pass


class UnitNotTop(QuantaleError):
    pass


class NotJoinDistributive(QuantaleError):
    pass


# L-subsets

class CarrierMismatch(LConvexError):
    pass


class IndexOutOfRange(LConvexError, IndexError):
    pass


class EmptySubcarrier(LConvexError):
    pass


# L-orders

class LOrderError(LConvexError):
    pass


class E1Violation(LOrderError):
    pass


class E2Violation(LOrderError):
    pass


class E3Violation(LOrderError):
    pass


# convex structures

class StructureError(LConvexError):
    pass


class MissingBottomTop(StructureError):
    pass


class NotMeetClosed(StructureError):
    pass


class NotStratified(StructureError):
    pass


class NotDirectedJoinClosed(StructureError):
    pass


# resource caps (CLI exit code 3)

class ResourceLimit(LConvexError):
    pass


class SizeLimitExceeded(ResourceLimit):
    pass


class BudgetExceeded(ResourceLimit):
    pass


# preconditions of morphism-level checks

class PreconditionError(LConvexError):
    pass


class NotCP(PreconditionError):
    pass


class NotS0(PreconditionError):
    pass


class NotSober(PreconditionError):
    pass


class NotStrictEmbedding(PreconditionError):
    pass


class NotARetraction(PreconditionError):
    pass


class EmptyEqualizer(PreconditionError):
    pass


class NoCanonicalExtension(LConvexError):
    """S(j) is not invertible, so the extension formula does not apply."""


class InternalConsistencyError(LConvexError):
    """Two routes that must agree did not. Always a bug."""
