"""Exception hierarchy shared by every module."""


class EtfForgeError(Exception):
    """Base class for all errors raised by etf_forge."""


class ParameterError(EtfForgeError, ValueError):
    """Invalid or inadmissible construction parameters."""


class NotPrime(ParameterError):
    pass


class TooLarge(ParameterError):
    pass


class FieldMismatch(EtfForgeError, TypeError):
    pass


class DivisionByZero(EtfForgeError, ZeroDivisionError):
    pass


class InvalidV(ParameterError):
    pass


class InadmissibleV(ParameterError):
    pass


class InadmissibleQ(ParameterError):
    pass


class InvalidDesign(EtfForgeError, ValueError):
    pass


class OrderMismatch(ParameterError):
    pass


class AssignmentCollision(ParameterError):
    pass


class NotTight(EtfForgeError, ValueError):
    pass


class DimensionMismatch(EtfForgeError, ValueError):
    pass


class InvalidDims(ParameterError):
    pass


class InvalidK(ParameterError):
    pass


class InvalidDelta(ParameterError):
    pass


class BudgetExceeded(EtfForgeError, RuntimeError):
    pass


class NoProvenance(EtfForgeError, ValueError):
    pass
