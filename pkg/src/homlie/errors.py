"""Exception hierarchy shared by all homlie modules.

Math precondition failures carry a ``witness`` attribute locating the first
violation (basis index tuple, offending vector, or condition name) so callers
and the CLI can report it deterministically.
"""

from __future__ import annotations


class HomLieError(Exception):
    """Base class for all homlie errors."""

    def __init__(self, message: str = "", witness=None):
        super().__init__(message)
        self.witness = witness


class DimensionMismatch(HomLieError):
    pass


class NotSquare(HomLieError):
    pass


class IndexOutOfRange(HomLieError):
    pass


class ParseError(HomLieError):
    pass


class UnknownFixture(HomLieError):
    pass


class BadParams(HomLieError):
    pass


class PreconditionFailed(HomLieError):
    """A mathematical precondition of an operation does not hold."""


class NotLie(PreconditionFailed):
    pass


class NotEndomorphism(PreconditionFailed):
    pass


class NotAutomorphism(PreconditionFailed):
    pass


class NotRegular(PreconditionFailed):
    pass


class NotMultiplicative(PreconditionFailed):
    pass


class NotInvolutive(PreconditionFailed):
    pass


class NotRepresentation(PreconditionFailed):
    pass


class NotSymmetric(PreconditionFailed):
    pass


class NotHomAssociative(PreconditionFailed):
    pass


class NotCommutativeAssociative(PreconditionFailed):
    pass


class NotInCentroid(PreconditionFailed):
    pass


class AlphaNotInCentroid(PreconditionFailed):
    pass


class NotAnIdeal(PreconditionFailed):
    pass


class NotSubalgebra(PreconditionFailed):
    pass


class CenterConditionFailed(PreconditionFailed):
    pass


class AnnihilatorConditionFailed(PreconditionFailed):
    pass


class ConditionFailed(PreconditionFailed):
    """A named construction condition (DE1..DE3, TDE1..TDE3, ...) fails."""

    def __init__(self, condition: str, message: str = "", witness=None):
        super().__init__(message or condition, witness)
        self.condition = condition


class InvolutiveDataInvalid(PreconditionFailed):
    pass


class CenterTrivial(PreconditionFailed):
    pass


class NoRationalCentralEigenvector(PreconditionFailed):
    pass


class NoIsotropicCentralVector(PreconditionFailed):
    pass


class ReconstructionFailed(HomLieError):
    pass
