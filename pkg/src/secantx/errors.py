"""Exception hierarchy shared by the secantx modules."""


class SecantxError(Exception):
    pass


class DivisionByZero(SecantxError, ZeroDivisionError):
    pass


class RangeError(SecantxError, OverflowError):
    pass


class DomainError(SecantxError, ValueError):
    pass


class PrecisionMismatch(SecantxError, ValueError):
    """Operands come from contexts with different precisions."""


class DuplicateNode(SecantxError, ValueError):
    pass


class DerivativeBreakdown(SecantxError, ArithmeticError):
    pass


class OutOfRange(SecantxError, ValueError):
    pass


class NotFound(SecantxError, KeyError):
    pass


class ExpressionSyntaxError(SecantxError, ValueError):
    def __init__(self, message: str, position: int, text: str = ""):
        self.message = message
        self.position = position
        self.text = text
        super().__init__(f"{message} at offset {position}")

    def annotated(self) -> str:
        """Return the offending text with a caret under the failing offset."""
        if not self.text:
            return str(self)
        return f"{self}\n  {self.text}\n  {' ' * self.position}^"


class UnknownIdentifier(ExpressionSyntaxError):
    pass
