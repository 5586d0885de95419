"""Exact arithmetic on the extended half-line [0, inf].

Finite values are :class:`fractions.Fraction` instances (always reduced, positive
denominator); the single infinite value is ``INF`` (``math.inf``).  Nothing else
ever enters a distance table or a weight, so every comparison and equality below
is exact.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Union

INF = math.inf
ZERO = Fraction(0)

Ext = Union[Fraction, float]

#: Default cap on reduced denominators accepted from textual input.
DEFAULT_DENOMINATOR_CAP = 10**9


class EncodingError(ValueError):
    """Raised for text that is not a valid extended nonnegative rational."""


def ext(value) -> Ext:
    """Coerce ``value`` into the value carrier.

    Accepts ints, Fractions, ``INF``, and strings in the textual encoding.
    Finite floats are refused: they would silently break exactness.
    """
    if isinstance(value, Fraction):
        if value < 0:
            raise EncodingError(f"negative value {value}")
        return value
    if isinstance(value, bool):
        raise EncodingError("booleans are not distances")
    if isinstance(value, int):
        if value < 0:
            raise EncodingError(f"negative value {value}")
        return Fraction(value)
    if isinstance(value, float):
        if value == INF:
            return INF
        raise EncodingError(f"finite float {value!r} is not exact; use a fraction string")
    if isinstance(value, str):
        return parse(value)
    raise EncodingError(f"cannot interpret {value!r} as an extended nonnegative rational")


def is_inf(a: Ext) -> bool:
    return a == INF


def add(a: Ext, b: Ext) -> Ext:
    if a == INF or b == INF:
        return INF
    return a + b


def tminus(a: Ext, b: Ext) -> Ext:
    """Truncated difference ``max(0, a - b)``; ``a - inf`` is 0 for every ``a``."""
    if b == INF:
        return ZERO
    if a == INF:
        return INF
    return a - b if a > b else ZERO


def minmax(family: Iterable[Ext]) -> tuple[Ext, Ext]:
    values = list(family)
    if not values:
        raise ValueError("minmax of an empty family")
    return min(values), max(values)


def parse(text: str, denominator_cap: int | None = None) -> Ext:
    """Parse ``"p/q"``, an integer string, or ``"inf"``."""
    s = text.strip()
    if s.lower() in ("inf", "+inf", "infinity"):
        return INF
    num, sep, den = s.partition("/")
    try:
        if sep:
            if not (_is_digits(num) and _is_digits(den)):
                raise ValueError
            q = Fraction(int(num), int(den))
        else:
            if not _is_digits(num):
                raise ValueError
            q = Fraction(int(num))
    except (ValueError, ZeroDivisionError):
        raise EncodingError(f"not an extended nonnegative rational: {text!r}") from None
    if denominator_cap is not None and q.denominator > denominator_cap:
        raise EncodingError(
            f"denominator of {text!r} exceeds cap {denominator_cap}"
        )
    return q


def _is_digits(s: str) -> bool:
    return s.isascii() and s.isdigit()


def fmt(a: Ext) -> str:
    """Canonical text: ``"inf"``, ``"n"`` or ``"p/q"`` in lowest terms."""
    if a == INF:
        return "inf"
    a = Fraction(a)
    if a.denominator == 1:
        return str(a.numerator)
    return f"{a.numerator}/{a.denominator}"
