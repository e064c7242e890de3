"""Exception types shared across modules."""


class LPBoundsError(Exception):
    pass


class ParameterError(LPBoundsError, ValueError):
    pass


class RangeError(LPBoundsError, IndexError):
    pass


class DomainError(LPBoundsError, ValueError):
    pass


class NumericalError(LPBoundsError, ArithmeticError):
    def __init__(self, msg, bracket=None):
        super().__init__(msg)
        self.bracket = bracket


class DegenerateError(LPBoundsError, ArithmeticError):
    pass


class CertificateError(LPBoundsError):
    pass
