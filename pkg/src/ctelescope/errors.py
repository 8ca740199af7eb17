"""Exception hierarchy shared by all modules."""


class CTError(Exception):
    """Base class for every error raised by the package."""


class ZeroInput(CTError, ValueError):
    pass


class NotApplicable(CTError, ValueError):
    pass


class InputNotNormal(CTError, ValueError):
    pass


class NotIrreducible(CTError, ValueError):
    pass


class NotAFactor(CTError, ValueError):
    pass


class WrongCase(CTError, ValueError):
    pass


class Incompatible(CTError, ValueError):
    """The two shift quotients do not describe a hypergeometric term.

    ``residual`` holds the polynomial sigma_x(f_y) f_x - sigma_y(f_x) f_y
    (cleared of denominators) for diagnostics.
    """

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class OrderCapExceeded(CTError, RuntimeError):
    pass


class NoInverse(CTError, ArithmeticError):
    pass


class ExprSyntaxError(CTError, SyntaxError):
    """Malformed expression text; ``pos`` is the 0-based offending offset."""

    def __init__(self, message, pos):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos


class DivisionByZero(CTError, ZeroDivisionError):
    pass
