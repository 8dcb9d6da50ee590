"""Exact rational numbers with a +infinity sentinel.

Finite values are plain :class:`fractions.Fraction` objects (always in lowest
terms with a positive denominator).  :data:`INF` is a singleton that compares
greater than every finite value and absorbs finite addition.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Union


class InfinityArithmeticError(ArithmeticError):
    """Raised for undefined operations on +infinity (e.g. inf * 0, inf - inf)."""


class _Infinity:
    __slots__ = ()
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __reduce__(self):
        return (_Infinity, ())

    def __repr__(self) -> str:
        return "INF"

    __str__ = __repr__

    def __hash__(self) -> int:
        return hash("stackprice.INF")

    def __eq__(self, other) -> bool:
        return other is self

    def __ne__(self, other) -> bool:
        return other is not self

    def __lt__(self, other) -> bool:
        return False

    def __le__(self, other) -> bool:
        return other is self

    def __gt__(self, other) -> bool:
        return other is not self

    def __ge__(self, other) -> bool:
        return True

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __sub__(self, other):
        if other is self:
            raise InfinityArithmeticError("inf - inf is undefined")
        return self

    def __rsub__(self, other):
        raise InfinityArithmeticError("finite - inf is not representable")

    def __mul__(self, other):
        if other is self:
            return self
        if other == 0:
            raise InfinityArithmeticError("inf * 0 is undefined")
        if other < 0:
            raise InfinityArithmeticError("-inf is not representable")
        return self

    __rmul__ = __mul__

    def __neg__(self):
        raise InfinityArithmeticError("-inf is not representable")


INF = _Infinity()

ExactNumber = Union[Fraction, _Infinity]

_DECIMAL = re.compile(r"^\s*([+-]?)(\d+)(?:\.(\d*))?\s*$")
_RATIONAL = re.compile(r"^\s*([+-]?\d+)\s*/\s*(\d+)\s*$")


def is_inf(x) -> bool:
    return x is INF


def to_exact(value) -> ExactNumber:
    """Convert ``value`` to an exact number without rounding.

    Accepts ints, Fractions, INF, and strings in decimal (``"5.25"``),
    rational (``"21/4"``) or ``"inf"`` syntax.  Floats are rejected: a
    binary float would smuggle rounding into otherwise exact data.
    """
    if value is INF:
        return INF
    if isinstance(value, bool):
        raise TypeError("booleans are not numbers here")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        return parse_number(value)
    raise TypeError(f"cannot convert {type(value).__name__} to an exact number")


def parse_number(text: str) -> ExactNumber:
    if text.strip().lower() in ("inf", "+inf", "infinity"):
        return INF
    m = _RATIONAL.match(text)
    if m:
        den = int(m.group(2))
        if den == 0:
            raise ValueError(f"zero denominator in {text!r}")
        return Fraction(int(m.group(1)), den)
    m = _DECIMAL.match(text)
    if m:
        sign, whole, frac = m.groups()
        frac = frac or ""
        value = Fraction(int(whole + frac), 10 ** len(frac))
        return -value if sign == "-" else value
    raise ValueError(f"not an exact number: {text!r}")


def format_number(x: ExactNumber) -> str:
    """Canonical text form: ``"inf"``, ``"5"`` or ``"21/4"``."""
    if x is INF:
        return "inf"
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def format_decimal(x: ExactNumber, digits: int = 6) -> str:
    if x is INF:
        return "inf"
    return f"{float(x):.{digits}g}"


def format_both(x: ExactNumber) -> str:
    """Exact fraction followed by a 6-significant-digit decimal."""
    exact = format_number(x)
    if x is INF or Fraction(x).denominator == 1:
        return exact
    return f"{exact} (~{format_decimal(x)})"


def harmonic(n: int) -> Fraction:
    return sum((Fraction(1, j) for j in range(1, n + 1)), Fraction(0))


def lcm_of_denominators(values) -> int:
    d = 1
    for v in values:
        d = math.lcm(d, Fraction(v).denominator)
    return d
