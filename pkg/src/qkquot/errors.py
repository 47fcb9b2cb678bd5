"""Exception hierarchy shared by every layer of the package."""


class QKError(Exception):
    """Base class for all errors raised by qkquot."""


class DimensionError(QKError, ValueError):
    """Lattice vectors or matrices of incompatible size were combined."""


class RingMismatchError(QKError, ValueError):
    """Elements of different coefficient rings were combined."""


class NotDivisibleError(QKError, ArithmeticError):
    """An exact division had a nonzero remainder."""


class InvalidAutomorphismError(QKError, ValueError):
    """A node permutation does not preserve the Cartan matrix."""


class ModeError(QKError, ValueError):
    """An operation needs q-mode (or a localized space) and did not get it."""


class PreconditionError(QKError, ValueError):
    """An argument violates a documented precondition."""


class InconsistentDataError(QKError):
    """Chevalley data failed a consistency check (e.g. non-commuting operators)."""


class ReconstructionError(QKError):
    """A basis class could not be written as a polynomial in the Chevalley operators."""

    def __init__(self, message, rank_profile=None):
        super().__init__(message)
        self.rank_profile = rank_profile or []


class NonPolynomialProductError(QKError):
    """A star product left a denominator or a negative Novikov exponent behind."""


class TheoremViolationError(QKError):
    """The parabolic quotient failed to be well defined on the given data."""


class UnsupportedError(QKError):
    """No quantum data is available for the requested type or feature."""


class SchemaError(QKError, ValueError):
    """A document does not match the expected schema."""


class ParseError(QKError, ValueError):
    """Text in one of the element or coefficient grammars could not be parsed."""
