"""Exception types shared across the package."""


class SumsetlabError(Exception):
    """Base class for library errors."""


class WordSizeError(SumsetlabError, OverflowError):
    """An arithmetic result left the configured integer word size."""


class DegenerateInputError(SumsetlabError, ValueError):
    """Input too small for the requested operation (e.g. a singleton)."""


class MalformedInputError(SumsetlabError, ValueError):
    """Input violates a structural precondition (duplicates, bad literal...)."""


class NotNormalizedError(SumsetlabError, ValueError):
    """Operation requires a set with min 0 and gcd 1; caller must normalize."""


class GroupMismatchError(SumsetlabError, TypeError):
    """Element does not belong to the group it was used with."""


class UnsupportedOperationError(SumsetlabError, TypeError):
    """Operation not available for this group (unordered, non-abelian...)."""


class InvalidCertificateError(SumsetlabError, ValueError):
    """A certificate failed its independent recheck."""


class WitnessPropagationError(SumsetlabError, RuntimeError):
    """No affine witness exists although the preconditions held.

    Raised with the offending instance attached; an occurrence on a
    hypothesis-satisfying instance would be a genuine counterexample.
    """

    def __init__(self, message, instance=None):
        super().__init__(message)
        self.instance = instance
