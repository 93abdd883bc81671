"""Exception types shared across the package."""


class ReversaError(Exception):
    """Base class for all library errors."""


class EmptySet(ReversaError):
    """Operation requires a non-empty generating set."""


class NotRepresentable(ReversaError):
    """Target is not a member of the generated semigroup."""


class IsIndependent(ReversaError):
    """No dependent element exists in the given set."""


class NotApplicable(ReversaError):
    """Requested witness construction does not match the spec's classification."""


class UnknownTrack(ReversaError):
    """Index point refers to a track id the witness does not declare."""


class Overflow(ReversaError):
    """Value exceeds the supported 64-bit range."""


class ZeroValue(ReversaError):
    """Cardinal values and multiplicities must be at least 1."""


class ParseError(ReversaError):
    """Input text does not conform to the grammar."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)


class BadPartition(ReversaError):
    """Piecewise domains must cover every natural number exactly once."""


class StructureMismatch(ReversaError):
    """Certificate was issued for a different spec than the one given."""


class NotIncreasing(ReversaError):
    """Sequence is required to be strictly increasing."""


class TooLarge(ReversaError):
    """Structure exceeds the configured brute-force bound."""


class OrdinalTooLarge(ReversaError):
    """Ordinal components are restricted to ordinals at most omega."""


class NotAlignable(ReversaError):
    """Piecewise composition cannot be expressed with finitely many pieces."""
