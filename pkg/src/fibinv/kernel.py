"""Exact coefficient domains: integers, rationals and integer polynomials in q.

Integers are plain Python ``int`` and rationals are :class:`fractions.Fraction`
(always stored reduced with a positive denominator).  Polynomials in ``q`` are
:class:`QPoly`, a dense ascending tuple of integer coefficients.

A :class:`Domain` bundles the handful of operations that triangle inversion
needs.  Ring arithmetic itself goes through the ordinary operators, so
``a + b`` and ``a * b`` work for every element type.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Union


class NonDivisibleError(ArithmeticError):
    """Raised when ``a / b`` has no exact quotient in the domain."""


class QPoly:
    """Polynomial in ``q`` with integer coefficients, ascending degree.

    The zero polynomial is the empty coefficient tuple; otherwise the last
    stored coefficient is nonzero.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [int(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("QPoly is immutable")

    @classmethod
    def monomial(cls, degree: int, coeff: int = 1) -> "QPoly":
        if degree < 0:
            raise ValueError("negative degree")
        return cls([0] * degree + [coeff])

    @classmethod
    def const(cls, c: int) -> "QPoly":
        return cls([c])

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __repr__(self):
        return f"QPoly({list(self.coeffs)})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                body = str(abs(c))
            else:
                mono = "q" if i == 1 else f"q^{i}"
                body = mono if abs(c) == 1 else f"{abs(c)}*{mono}"
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        for sign, body in terms[1:]:
            out += f"{sign}{body}"
        return out

    def __eq__(self, other):
        if isinstance(other, QPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.coeffs == QPoly([other]).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(("QPoly", self.coeffs))

    @staticmethod
    def _lift(x) -> "QPoly":
        if isinstance(x, QPoly):
            return x
        if isinstance(x, int):
            return QPoly([x])
        raise TypeError(f"cannot combine QPoly with {type(x).__name__}")

    def __add__(self, other):
        try:
            o = self._lift(other)
        except TypeError:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        res = list(a)
        for i, c in enumerate(b):
            res[i] += c
        return QPoly(res)

    __radd__ = __add__

    def __neg__(self):
        return QPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        try:
            o = self._lift(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            o = self._lift(other)
        except TypeError:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if not a or not b:
            return QPoly()
        res = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                res[i + j] += x * y
        return QPoly(res)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative exponent")
        result, base = QPoly([1]), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def divmod_exact(self, divisor: "QPoly") -> "QPoly":
        """Long division; raises :class:`NonDivisibleError` on any remainder."""
        d = self._lift(divisor).coeffs
        if not d:
            raise ZeroDivisionError("division by the zero polynomial")
        rem = list(self.coeffs)
        if len(rem) < len(d):
            if rem:
                raise NonDivisibleError(f"{self} is not divisible by {divisor}")
            return QPoly()
        lead = d[-1]
        quot = [0] * (len(rem) - len(d) + 1)
        for i in range(len(quot) - 1, -1, -1):
            top = rem[i + len(d) - 1]
            if top == 0:
                continue
            c, r = divmod(top, lead)
            if r:
                raise NonDivisibleError(f"{self} is not divisible by {divisor}")
            quot[i] = c
            for j, dc in enumerate(d):
                rem[i + j] -= c * dc
        if any(rem):
            raise NonDivisibleError(f"{self} is not divisible by {divisor}")
        return QPoly(quot)

    def __call__(self, r) -> Fraction:
        return qpoly_eval(self, r)


Element = Union[int, Fraction, QPoly]


def qpoly_eval(p: QPoly, r) -> Fraction:
    """Horner evaluation at an exact rational point."""
    r = Fraction(r)
    acc = Fraction(0)
    for c in reversed(p.coeffs):
        acc = acc * r + c
    return acc


def _int_divide(a: int, b: int) -> int:
    if b == 0:
        raise ZeroDivisionError("integer division by zero")
    quot, rem = divmod(a, b)
    if rem:
        raise NonDivisibleError(f"{b} does not divide {a}")
    return quot


def _rat_divide(a, b) -> Fraction:
    if b == 0:
        raise ZeroDivisionError("rational division by zero")
    return Fraction(a) / Fraction(b)


def _poly_divide(a, b) -> QPoly:
    return QPoly._lift(a).divmod_exact(QPoly._lift(b))


def format_rational(x) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class Domain:
    """One exact coefficient domain."""

    name: str
    zero: Any
    one: Any
    coerce: Callable[[Any], Any]
    divide: Callable[[Any, Any], Any]
    encode: Callable[[Any], Any]
    decode: Callable[[Any], Any]

    def add(self, a, b):
        return a + b

    def negate(self, a):
        return -a

    def multiply(self, a, b):
        return a * b

    def equal(self, a, b) -> bool:
        return a == b

    def exact_divide(self, a, b):
        return self.divide(a, b)

    @property
    def is_field(self) -> bool:
        return self.name == "rational"


def _decode_int(s) -> int:
    if isinstance(s, bool) or not isinstance(s, (str, int)):
        raise ValueError(f"bad integer encoding: {s!r}")
    return int(s)


def _decode_rational(s) -> Fraction:
    if isinstance(s, bool) or not isinstance(s, (str, int)):
        raise ValueError(f"bad rational encoding: {s!r}")
    return Fraction(s)


def _decode_poly(s) -> QPoly:
    if not isinstance(s, list):
        raise ValueError(f"bad q-polynomial encoding: {s!r}")
    return QPoly(_decode_int(c) for c in s)


INTEGER = Domain(
    "integer", 0, 1, int, _int_divide,
    encode=lambda x: str(x), decode=_decode_int,
)
RATIONAL = Domain(
    "rational", Fraction(0), Fraction(1), Fraction, _rat_divide,
    encode=format_rational, decode=_decode_rational,
)
QPOLY = Domain(
    "qpoly", QPoly(), QPoly([1]), QPoly._lift, _poly_divide,
    encode=lambda p: [str(c) for c in p.coeffs], decode=_decode_poly,
)

DOMAINS = {d.name: d for d in (INTEGER, RATIONAL, QPOLY)}


def get_domain(name: str) -> Domain:
    try:
        return DOMAINS[name]
    except KeyError:
        raise ValueError(f"unknown coefficient domain {name!r}") from None


def exact_divide(a, b):
    """Exact quotient ``a / b`` in the narrowest domain holding both operands.

    Integers stay integers (raising :class:`NonDivisibleError` when ``b`` does
    not divide ``a``), rationals divide freely, polynomials use long division.
    """
    if isinstance(a, QPoly) or isinstance(b, QPoly):
        return _poly_divide(a, b)
    if isinstance(a, Fraction) or isinstance(b, Fraction):
        return _rat_divide(a, b)
    return _int_divide(a, b)
