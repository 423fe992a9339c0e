"""Exception types shared across the engine."""


class TaumutError(Exception):
    """Base class for all engine errors."""


class FieldMismatchError(TaumutError):
    """Two exact values with different field tags met in one operation."""


class DimensionMismatchError(TaumutError):
    """Matrix or module shapes are incompatible."""


class SpecError(TaumutError):
    """An algebra specification violates its invariants."""


class CharacteristicError(TaumutError):
    """The prime-field characteristic is too small for the radical algorithm."""


class IndeterminateDecompositionError(TaumutError):
    """The endomorphism-ring analysis could not certify a decomposition."""


class IncompleteExplorationError(TaumutError):
    """An operation required a complete exchange quiver but got a prefix."""


class NotTauRigidError(TaumutError):
    """A module that must be tau-rigid is not."""


class MutationError(TaumutError):
    """Mutation was requested at a summand that is not mutable."""


class SelfExtensionError(TaumutError):
    """Mutation was requested at a brick with self-extensions."""


class ApproximationDichotomyError(TaumutError):
    """A universal map expected to be injective or surjective was neither."""


class IntervalError(TaumutError):
    """No interval module exists for the requested top and socle."""


class GuardExceededError(TaumutError):
    """A brute-force search exceeded its safety budget."""
