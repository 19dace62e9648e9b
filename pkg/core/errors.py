class QsimError(Exception):
    """Base class for every domain error raised by the toolkit."""


class DimensionError(QsimError, ValueError):
    pass


class NotUnitaryError(QsimError, ValueError):
    pass


class InvalidStateError(QsimError, ValueError):
    """Non-normalized state, invalid density matrix or probability distribution."""


class CapExceededError(QsimError):
    pass


class RetryBudgetExceeded(QsimError):
    pass


class DomainError(QsimError, ValueError):
    """Parameter outside the range where an operation is defined."""


class MalformedMachineError(QsimError, ValueError):
    pass
