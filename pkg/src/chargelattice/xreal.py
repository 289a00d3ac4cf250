"""Exact rationals extended with +inf and -inf.

Every value is either a canonical :class:`fractions.Fraction` or one of the
two infinities. There is no floating point anywhere: ``+inf + -inf`` raises
:class:`UndefinedSum` instead of producing a NaN.

>>> ExtReal("1/2") + ExtReal("1/3")
ExtReal('5/6')
>>> str(POS_INF + -7)
'+inf'
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import reduce
from typing import Iterable, Union

from .errors import EmptyFamily, ParseError, UndefinedSum

__all__ = [
    "ExtReal",
    "POS_INF",
    "NEG_INF",
    "ZERO",
    "ONE",
    "add",
    "xsum",
    "sup",
    "inf",
    "xmax",
    "xmin",
    "neg",
    "parse",
    "to_xreal",
]

Number = Union[int, Fraction, "ExtReal"]

_TEXT = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


class ExtReal:
    """An element of Q ∪ {-inf, +inf}.

    ``_inf`` is 0 for finite values, +1 or -1 for the infinities; ``_q`` is
    the finite value (``Fraction(0)`` when infinite).
    """

    __slots__ = ("_q", "_inf")

    def __init__(self, value: Number | str = 0):
        if isinstance(value, ExtReal):
            self._q, self._inf = value._q, value._inf
        elif isinstance(value, str):
            other = parse(value)
            self._q, self._inf = other._q, other._inf
        elif isinstance(value, (int, Fraction)) and not isinstance(value, bool):
            self._q = Fraction(value)
            self._inf = 0
        else:
            raise TypeError(f"cannot build ExtReal from {type(value).__name__}")

    @classmethod
    def _raw(cls, q: Fraction, sign: int) -> "ExtReal":
        obj = object.__new__(cls)
        obj._q = q
        obj._inf = sign
        return obj

    # -- inspection -------------------------------------------------------

    @property
    def is_finite(self) -> bool:
        return self._inf == 0

    @property
    def is_pos_inf(self) -> bool:
        return self._inf > 0

    @property
    def is_neg_inf(self) -> bool:
        return self._inf < 0

    @property
    def fraction(self) -> Fraction:
        if self._inf:
            raise ValueError(f"{self} has no finite value")
        return self._q

    def sign(self) -> int:
        if self._inf:
            return self._inf
        return (self._q > 0) - (self._q < 0)

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other: Number) -> "ExtReal":
        other = to_xreal(other)
        if self._inf or other._inf:
            if self._inf and other._inf and self._inf != other._inf:
                raise UndefinedSum(f"{self} + {other}")
            return POS_INF if (self._inf or other._inf) > 0 else NEG_INF
        return ExtReal._raw(self._q + other._q, 0)

    __radd__ = __add__

    def __neg__(self) -> "ExtReal":
        return ExtReal._raw(-self._q, -self._inf)

    def __pos__(self) -> "ExtReal":
        return self

    def __sub__(self, other: Number) -> "ExtReal":
        return self + (-to_xreal(other))

    def __rsub__(self, other: Number) -> "ExtReal":
        return to_xreal(other) + (-self)

    def __abs__(self) -> "ExtReal":
        return -self if self.sign() < 0 else self

    def __mul__(self, other: Number) -> "ExtReal":
        """Multiplication with the measure-theoretic convention 0 * inf = 0."""
        other = to_xreal(other)
        if not self._inf and not other._inf:
            return ExtReal._raw(self._q * other._q, 0)
        s = self.sign() * other.sign()
        if s == 0:
            return ZERO
        return POS_INF if s > 0 else NEG_INF

    __rmul__ = __mul__

    # -- order ------------------------------------------------------------

    def _key(self) -> tuple[int, Fraction]:
        return (self._inf, self._q)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self._inf == 0 and self._q == other
        if isinstance(other, ExtReal):
            return self._inf == other._inf and self._q == other._q
        return NotImplemented

    def __hash__(self) -> int:
        if self._inf:
            return hash(("ExtReal", self._inf))
        return hash(self._q)

    def __lt__(self, other: Number) -> bool:
        return self._key() < to_xreal(other)._key()

    def __le__(self, other: Number) -> bool:
        return self._key() <= to_xreal(other)._key()

    def __gt__(self, other: Number) -> bool:
        return self._key() > to_xreal(other)._key()

    def __ge__(self, other: Number) -> bool:
        return self._key() >= to_xreal(other)._key()

    # -- text -------------------------------------------------------------

    def __str__(self) -> str:
        if self._inf > 0:
            return "+inf"
        if self._inf < 0:
            return "-inf"
        q = self._q
        return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"

    def __repr__(self) -> str:
        return f"ExtReal('{self}')"


POS_INF = ExtReal._raw(Fraction(0), 1)
NEG_INF = ExtReal._raw(Fraction(0), -1)
ZERO = ExtReal(0)
ONE = ExtReal(1)


def to_xreal(value: Number | str) -> ExtReal:
    if isinstance(value, ExtReal):
        return value
    return ExtReal(value)


def parse(text: str) -> ExtReal:
    """Decode ``"p/q"``, ``"p"``, ``"+inf"``, ``"inf"`` or ``"-inf"``."""
    t = text.strip().lower()
    if t in ("+inf", "inf", "+∞", "∞"):
        return POS_INF
    if t in ("-inf", "-∞"):
        return NEG_INF
    m = _TEXT.match(t)
    if not m:
        raise ParseError(f"not an extended rational: {text!r}")
    num, den = m.group(1), m.group(2)
    if den is not None and int(den) == 0:
        raise ParseError(f"zero denominator in {text!r}")
    return ExtReal._raw(Fraction(int(num), int(den) if den else 1), 0)


def add(a: Number, b: Number) -> ExtReal:
    return to_xreal(a) + to_xreal(b)


def xsum(values: Iterable[Number]) -> ExtReal:
    """Left fold of :func:`add`; the empty sum is 0.

    Raises :class:`UndefinedSum` as soon as both infinities have been seen,
    even if they are not adjacent, so the result never depends on order.
    """
    total = Fraction(0)
    sign = 0
    for v in values:
        v = to_xreal(v)
        if v._inf:
            if sign and sign != v._inf:
                raise UndefinedSum("sum contains both +inf and -inf")
            sign = v._inf
        else:
            total += v._q
    if sign:
        return POS_INF if sign > 0 else NEG_INF
    return ExtReal._raw(total, 0)


def xmax(a: Number, b: Number) -> ExtReal:
    a, b = to_xreal(a), to_xreal(b)
    return b if b > a else a


def xmin(a: Number, b: Number) -> ExtReal:
    a, b = to_xreal(a), to_xreal(b)
    return b if b < a else a


def sup(values: Iterable[Number]) -> ExtReal:
    vals = [to_xreal(v) for v in values]
    if not vals:
        raise EmptyFamily("sup of an empty collection")
    return reduce(xmax, vals)


def inf(values: Iterable[Number]) -> ExtReal:
    vals = [to_xreal(v) for v in values]
    if not vals:
        raise EmptyFamily("inf of an empty collection")
    return reduce(xmin, vals)


def neg(a: Number) -> ExtReal:
    return -to_xreal(a)
