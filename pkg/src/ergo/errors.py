"""Exception hierarchy mapped to the CLI exit-code contract."""


class ErgoError(Exception):
    """Base class for all library errors."""

    exit_code = 1


class InputFormatError(ErgoError):
    """Malformed input file or argument (exit code 2)."""

    exit_code = 2


class PreconditionError(ErgoError):
    """Operation precondition violated, e.g. non-primitive matrix (exit code 3)."""

    exit_code = 3


class CrossCheckError(ErgoError):
    """Two routes that must agree disagreed beyond tolerance (exit code 4)."""

    exit_code = 4
