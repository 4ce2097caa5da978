"""Exception hierarchy.

Refutations are distinct from ordinary errors: a refutation means a
property that the theory guarantees failed on a concrete input, and the
CLI reports it with exit code 1 rather than 2.
"""


class MatroidError(Exception):
    pass


class NotAMatroidError(MatroidError, ValueError):
    pass


class ResourceError(MatroidError):
    """An enumeration cap was exceeded."""


class Refutation(MatroidError):
    """A theorem-guaranteed property failed; ``witness`` carries the evidence."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class InternalConsistencyError(Refutation):
    """Two independent computations of the same object disagree."""
