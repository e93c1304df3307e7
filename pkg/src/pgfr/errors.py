"""Exception types shared across the package."""


class PGFRError(Exception):
    pass


class InvalidParameter(PGFRError, ValueError):
    pass


class NumericFailure(PGFRError, ArithmeticError):
    pass


class InternalInconsistency(PGFRError, AssertionError):
    """A computed certificate contradicts a proven statement; always a bug."""


class InfeasibleTarget(PGFRError, ValueError):
    """Phase targets violate an integer relation among the eigenvalues."""

    def __init__(self, message, relation=None, mismatch=None):
        super().__init__(message)
        self.relation = relation
        self.mismatch = mismatch
