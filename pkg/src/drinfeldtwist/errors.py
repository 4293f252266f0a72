"""Exception types shared across the package.

Every failure mode that a caller can meaningfully react to gets its own
class; all of them derive from Error so the CLI can map any library
failure to a diagnostic exit code.
"""


class Error(Exception):
    """Base class for all library errors."""


class DividesError(Error):
    """A prime divides an element that was required to be coprime to it."""


class BadOrderError(Error):
    """A requested multiplicative order does not divide q - 1."""


class ZeroSignError(Error):
    """Sign/degree decomposition requested for an (exactly) zero value."""


class DescentError(Error):
    """A value that must lie in a smaller field or ring has coordinates
    outside it.  Signals a bug or insufficient precision, never bad input."""


class ShapeError(Error):
    """Matrix or vector dimensions are incompatible."""


class RingMismatchError(Error):
    """Operands belong to different coefficient rings."""


class CharacteristicError(Error):
    """A bracket [k] vanished, so the exp/log recursion cannot divide."""


class DivergenceError(Error):
    """Series evaluation saw growing term norms over the summed range."""


class InseparableError(Error):
    """A level polynomial is not squarefree over its tower."""


class BadWordError(Error):
    """A group word uses letters outside the presented generator set."""


class NotRationalError(Error):
    """A tower element expected to descend to K has nonzero coordinates
    on non-constant basis monomials.  Carries the offending coordinates."""

    def __init__(self, message, coordinates=None):
        super().__init__(message)
        self.coordinates = coordinates


class ReducibleError(Error):
    """A polynomial required to be irreducible factors."""


class ZeroAverageError(Error):
    """The group average of the seed vector vanished; retry with another seed."""


class NotFundamentalError(Error):
    """The Moore determinant of the solution vanished."""


class SingularError(Error):
    """A matrix that must be invertible is singular."""


class BadPrimeError(Error):
    """Reduction attempted at a prime of bad reduction."""


class ConvergenceError(Error):
    """A local factor or product left the 1-unit convergence regime."""


class RadiusError(Error):
    """Evaluation point lies outside the known convergence radius."""


class NotPowerFreeError(Error):
    """The twisting polynomial has an irreducible factor of multiplicity >= n."""
