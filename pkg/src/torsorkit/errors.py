"""Exception taxonomy shared across the package.

Every operation raises one of these instead of a bare ValueError so that
callers (and the CLI) can map failures to stable diagnostics.
"""


class TorsorKitError(Exception):
    """Base class for all package errors."""


class ParseError(TorsorKitError):
    """Malformed scalar text, file field, or recipe string."""


class InvalidField(TorsorKitError):
    """Field specification violates its invariants (non-prime modulus, ...)."""


class DivisionByZero(TorsorKitError):
    """Inversion of the zero scalar."""


class ModulusMismatch(TorsorKitError):
    """Operands live over different ground fields."""


class ShapeError(TorsorKitError):
    """Inconsistent dimensions or table shapes."""


class ArityMismatch(ShapeError):
    """Composition of maps whose arities do not line up."""


class BadPermutation(TorsorKitError):
    """Leg permutation is not a bijection on the leg positions."""


class LegCapExceeded(TorsorKitError):
    """A materialized map would exceed the total tensor-leg cap."""


class DimensionCapExceeded(TorsorKitError):
    """Base dimension exceeds the configured cap (see TORSORKIT_MAX_DIM)."""


class Singular(TorsorKitError):
    """Attempt to invert a singular map; carries the kernel dimension."""

    def __init__(self, message, kernel_dim):
        super().__init__("%s (kernel dimension %d)" % (message, kernel_dim))
        self.kernel_dim = kernel_dim


class NotInvertible(TorsorKitError):
    """An algebra element has no inverse; carries a kernel witness."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class SearchSpaceTooLarge(TorsorKitError):
    """Exhaustive functional enumeration would exceed the guard bound."""


class NotAGroup(TorsorKitError):
    """A multiplication table fails the group axioms."""


class HopfInvalid(TorsorKitError):
    """A Hopf presentation failed verification where a valid one is required."""


class TwistInvalid(TorsorKitError):
    """Twist data fails the twist equations."""


class VerificationFailure(TorsorKitError):
    """An object failed its axiom suite where a verified one is required."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class CorestrictionFailure(TorsorKitError):
    """Image of a structure map escapes the carrier subspace."""


class MembershipFailure(TorsorKitError):
    """A tensor expected inside a carrier slice is not a member."""


class DimensionMismatch(TorsorKitError):
    """Computed carrier dimension differs from the expected one."""


class PhiNotIso(TorsorKitError):
    """Supplied gluing map between side Hopf algebras is not an isomorphism."""


class NotEquivariant(TorsorKitError):
    """A candidate torsor morphism fails structure equivariance."""


class ReferenceHopfMismatch(TorsorKitError):
    """Decorated torsors disagree on the shared reference Hopf algebra."""


class WitnessRejected(TorsorKitError):
    """An equivalence witness fails one of its defining identities."""


class BadCharacteristic(TorsorKitError):
    """Recipe demands a different field characteristic."""


class DNotInvertible(TorsorKitError):
    """Quadratic recipe parameter d is not invertible."""


class QNotPrimitive(TorsorKitError):
    """q is not a primitive n-th root of unity."""


class AlphaBetaZero(TorsorKitError):
    """Cyclic-algebra parameters must be nonzero."""


class NotGaloisAction(TorsorKitError):
    """Supplied automorphism data is not a faithful transitive group action."""


class NotSeparable(TorsorKitError):
    """Defining polynomial is not separable."""


class UnsupportedVersion(TorsorKitError):
    """Presentation file format version not supported."""


class IndexOutOfRange(TorsorKitError):
    """A serialized table index falls outside the declared dimension."""
