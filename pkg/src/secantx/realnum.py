"""Extended-precision real arithmetic.

All numerics in secantx run on values created by a :class:`RealContext`.
A context is an :class:`mpmath.MPContext` with its precision fixed at
construction, so two solves at different precisions never share state.
Values (``ctx.mpf`` instances) are immutable and remember their context.
"""

from __future__ import annotations

import math
from decimal import ROUND_HALF_EVEN, Decimal, localcontext
from typing import Union

import mpmath
from mpmath.ctx_mp_python import _mpf

from .errors import DivisionByZero, DomainError, PrecisionMismatch, RangeError

DEFAULT_PRECISION = 256
QUAD_PRECISION = 113

# Base class of every context-bound mpf type.
Real = _mpf
RealLike = Union[int, str, float, _mpf]

ARITH_OPS = ("add", "sub", "mul", "div")
TRANSCENDENTALS = ("exp", "ln", "sin", "cos", "pow")


class RealContext(mpmath.MPContext):
    """Arithmetic context with an explicit significand width in bits.

    Rounding is mpmath's default, round-to-nearest with ties to even.
    mpmath exponents are unbounded, so overflow is reported only when a
    non-finite result comes out of finite operands.
    """

    def __init__(self, precision: int = DEFAULT_PRECISION):
        if isinstance(precision, bool) or not isinstance(precision, int) or precision < 2:
            raise ValueError(f"precision must be an integer >= 2 bits, got {precision!r}")
        super().__init__()
        self.prec = precision
        self._precision = precision

    @property
    def precision(self) -> int:
        return self._precision

    def __repr__(self) -> str:
        return f"RealContext(precision={self._precision})"

    # -- conversion --------------------------------------------------------

    def real(self, value: RealLike) -> Real:
        """Convert ``value`` to a value of this context, rounding once."""
        if isinstance(value, str):
            return self.parse(value)
        if isinstance(value, _mpf):
            if getattr(value, "context", None) is self:
                return value
            return self.mpf(value)
        return self.mpf(value)

    def parse(self, text: str) -> Real:
        """Parse a decimal string; accepts ``E`` or the legacy ``D`` exponent marker."""
        cleaned = text.strip().replace("D", "E").replace("d", "e")
        try:
            return self.mpf(cleaned)
        except (ValueError, TypeError) as exc:
            raise ValueError(f"not a real number: {text!r}") from exc

    def check(self, *values: Real) -> None:
        for v in values:
            other = getattr(v, "context", None)
            if other is not None and other is not self and other.prec != self._precision:
                raise PrecisionMismatch(
                    f"value at {other.prec} bits used in a {self._precision}-bit context"
                )

    def _operand(self, value: RealLike) -> Real:
        if isinstance(value, _mpf):
            self.check(value)
        return self.real(value)

    # -- basic arithmetic --------------------------------------------------

    def arith(self, a: RealLike, b: RealLike, op: str) -> Real:
        a = self._operand(a)
        b = self._operand(b)
        if op == "add":
            r = a + b
        elif op == "sub":
            r = a - b
        elif op == "mul":
            r = a * b
        elif op == "div":
            if b == 0:
                raise DivisionByZero("division by zero")
            r = a / b
        else:
            raise ValueError(f"unknown operation {op!r}; expected one of {ARITH_OPS}")
        return self._finite(r, a, b)

    def _finite(self, r: Real, *args: Real) -> Real:
        if self.isinf(r) and all(self.isfinite(a) for a in args):
            raise RangeError("result outside the representable range")
        return r

    # -- transcendental functions -------------------------------------------

    def transcendental(self, x: RealLike, fn: str, exponent: RealLike | None = None) -> Real:
        x = self._operand(x)
        if fn == "exp":
            return self._finite(self.exp(x), x)
        if fn == "ln":
            if not x > 0:
                raise DomainError(f"ln of non-positive value {self.nstr(x, 10)}")
            return self.ln(x)
        if fn == "sin":
            return self.sin(x)
        if fn == "cos":
            return self.cos(x)
        if fn == "pow":
            if exponent is None:
                raise ValueError("pow needs an exponent")
            return self.real_pow(x, self._operand(exponent))
        raise ValueError(f"unknown function {fn!r}; expected one of {TRANSCENDENTALS}")

    def real_pow(self, base: Real, exponent: Real) -> Real:
        """``base ** exponent`` restricted to the real domain."""
        if self.isint(exponent):
            if base == 0 and exponent < 0:
                raise DivisionByZero("zero raised to a negative power")
            return self._finite(base ** int(exponent), base)
        if not base > 0:
            raise DomainError("non-integer power of a non-positive base")
        return self._finite(base ** exponent, base, exponent)

    # -- spacing -----------------------------------------------------------

    def ulp(self, x: Real) -> Real:
        """Spacing of the binary grid at ``x`` for this precision; zero at zero."""
        x = self.real(x)
        if x == 0 or not self.isfinite(x):
            return self.zero
        _, man, exp, bc = x._mpf_
        return self.ldexp(self.one, exp + bc - self._precision)

    @property
    def unit_roundoff(self) -> Real:
        return self.ldexp(self.one, -self._precision)

    # -- printing ----------------------------------------------------------

    def round_trip_digits(self) -> int:
        return math.ceil(self._precision * math.log10(2)) + 2

    def format(self, x: RealLike, digits: int, marker: str = "E") -> str:
        return format_real(self.real(x), digits, marker)


def to_decimal(x: Real) -> Decimal:
    """Exact decimal expansion of a finite binary value."""
    sign, man, exp, _ = x._mpf_
    if not man:
        return Decimal(0)
    man = int(man)
    if exp >= 0:
        return Decimal(-(man << exp) if sign else man << exp)
    digits = Decimal(man * 5 ** (-exp)).as_tuple().digits
    return Decimal((sign, digits, exp))


def format_real(x: Real, digits: int, marker: str = "E") -> str:
    """Scientific notation with ``digits`` significant digits, e.g. ``2.00000E+00``."""
    if digits < 1:
        raise ValueError("digits must be >= 1")
    ctx = getattr(x, "context", mpmath.mp)
    if ctx.isnan(x):
        return "NaN"
    if ctx.isinf(x):
        return "Inf" if x > 0 else "-Inf"
    exact = to_decimal(x)
    if exact == 0:
        mantissa = "0" if digits == 1 else "0." + "0" * (digits - 1)
        return f"{mantissa}{marker}+00"
    with localcontext() as dctx:
        dctx.prec = digits
        dctx.rounding = ROUND_HALF_EVEN
        rounded = +exact
    text = f"{rounded:.{digits - 1}E}"
    mantissa, _, exponent = text.partition("E")
    exp_value = int(exponent)
    sign = "-" if exp_value < 0 else "+"
    return f"{mantissa}{marker}{sign}{abs(exp_value):02d}"


def make_context(precision: int | None = None) -> RealContext:
    return RealContext(DEFAULT_PRECISION if precision is None else precision)
