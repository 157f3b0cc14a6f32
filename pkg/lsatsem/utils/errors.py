"""Exception types raised by lsatsem operations"""


class LsatError(Exception):
    """Base class for all operation errors; `code` is stable across releases"""

    code = 'E_LSAT'

    def __init__(self, message, **context):
        super().__init__(message)
        self.message = message
        self.context = context

    def __str__(self):
        return f"{self.code}: {self.message}"


class UnknownReferenceError(LsatError):
    code = 'E_UNKNOWN_REF'


class UnsupportedProfileError(LsatError):
    code = 'E_UNSUPPORTED_PROFILE'


class NegativePowerError(LsatError):
    code = 'E_NEGATIVE_POWER'


class SequenceIndexError(LsatError):
    code = 'E_INDEX'


class BudgetExceededError(LsatError):
    code = 'E_BUDGET'


class TooLargeError(LsatError):
    code = 'E_TOO_LARGE'


class EmptyFSAError(LsatError):
    code = 'E_EMPTY_FSA'


class InvalidSpecError(LsatError):
    """Raised when a construction needs a specification that validates cleanly"""

    code = 'E_INVALID_SPEC'

    def __init__(self, message, diagnostics=()):
        super().__init__(message)
        self.diagnostics = list(diagnostics)
