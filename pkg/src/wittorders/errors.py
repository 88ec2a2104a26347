"""Exception hierarchy shared by all modules."""


class WittOrdersError(Exception):
    """Base class for library errors."""


class MathematicalRejection(WittOrdersError):
    """An input fails a mathematical condition; ``witness`` localizes it."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class CostGuardExceeded(WittOrdersError):
    pass


class InconclusiveSearch(WittOrdersError):
    pass


class SchemaError(WittOrdersError):
    pass


class RingMismatch(WittOrdersError):
    pass


class NotAUnit(MathematicalRejection):
    pass


class NotIrreducible(MathematicalRejection):
    pass


class AssociativityViolation(MathematicalRejection):
    pass


class IdentityViolation(MathematicalRejection):
    pass


class NotIdempotent(MathematicalRejection):
    pass


class NonFreeCorner(MathematicalRejection):
    pass


class NoSolution(MathematicalRejection):
    """Linear system is inconsistent.

    ``witness`` is a row vector ``y`` with ``y @ A == 0`` and ``y @ b != 0``.
    """


class NotCoboundary(MathematicalRejection):
    pass


class DepthViolation(MathematicalRejection):
    pass


class PrecisionExhausted(WittOrdersError):
    pass


class NotNormal(MathematicalRejection):
    pass


class ConjugacyWitnessNotFound(MathematicalRejection):
    pass


class IncompleteAutList(WittOrdersError):
    pass


class InvalidGroupTable(MathematicalRejection):
    pass


class NotAnAutomorphism(MathematicalRejection):
    pass
