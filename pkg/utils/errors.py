"""Exception hierarchy shared by every package.

The CLI maps `InputError` to exit code 2 and any other `GapforgeError` to 1.
"""


class GapforgeError(Exception):
    """Base class for all errors raised on purpose."""


class InputError(GapforgeError, ValueError):
    """Bad parameters, malformed files, or requests outside a supported size."""


class GraphParseError(InputError):
    def __init__(self, message, line_no=None):
        self.line_no = line_no
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)


class CapExceededError(InputError):
    def __init__(self, what, value, cap):
        self.what = what
        self.value = value
        self.cap = cap
        super().__init__(f"{what} = {value} exceeds cap {cap}")


class WitnessError(GapforgeError, ValueError):
    """A witness handed to an extraction routine does not meet its precondition."""


class GenerationError(GapforgeError, RuntimeError):
    """A seeded generator could not produce a verified instance."""


class VerificationError(GapforgeError):
    """A promise or coverage property failed its brute-force check."""


class InvariantViolation(GapforgeError, AssertionError):
    """A proven property was observed to fail. Always a bug in this code."""
