"""Exception hierarchy shared across the package.

Each class carries the process exit code the command line tool maps it to.
"""


class ProtocolError(Exception):
    """Base class for all errors raised by this package."""

    exit_code = 1


class InputError(ProtocolError):
    """Invalid argument, dimension mismatch, or malformed input file."""

    exit_code = 2


class PhaseOrderError(ProtocolError):
    """Session phases executed out of order (e.g. verify before unveil)."""

    exit_code = 3


class CertificationError(ProtocolError):
    """Codebook certification failed or a stored certificate does not match."""

    exit_code = 4

    def __init__(self, message, *, best_epsilon=None, attempts=None):
        super().__init__(message)
        self.best_epsilon = best_epsilon
        self.attempts = attempts


class GenerationError(CertificationError):
    """Random code generation could not produce a full-rank generator."""


class NumericalError(ProtocolError):
    """An internal numerical cross-check failed or a solver did not converge."""

    exit_code = 5
