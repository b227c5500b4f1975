"""Truncated formal power series with exact rational coefficients.

Coefficients are stored in the ordinary convention, ``coeffs[n] = [z^n]``.
The exponential view ``f_n = n! [z^n]`` is available through
:meth:`TruncatedSeries.egf` and :meth:`TruncatedSeries.from_exponential`.

Every operation only needs ring arithmetic plus division by integers, so
the coefficients may also be symbolic objects (see :mod:`convpoly.mpoly`)
that support ``+``, ``-``, ``*`` and multiplication by ``Fraction``.
"""
from __future__ import annotations

import json
from fractions import Fraction
from math import factorial
from numbers import Rational


class SeriesError(ValueError):
    """Raised when an operation's precondition on a series fails."""


def as_rational(value) -> Fraction:
    """Parse ``value`` (int, Fraction, or a ``"p/q"`` string) as a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def format_rational(value) -> str:
    """Format as ``"p/q"``, or ``"p"`` when the denominator is one."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def _coerce(c):
    if isinstance(c, (int, Rational, str)):
        return as_rational(c)
    return c


class TruncatedSeries:
    """A power series known through ``z^order``.

    Arithmetic between two series truncates to the smaller order.
    Instances are immutable.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs, order: int | None = None):
        cs = [_coerce(c) for c in coeffs]
        if order is not None:
            if order < 0:
                raise SeriesError("order must be nonnegative")
            cs = cs[: order + 1] + [Fraction(0)] * (order + 1 - len(cs))
        if not cs:
            raise SeriesError("a series needs at least a constant term")
        self._coeffs = tuple(cs)

    # construction helpers

    @classmethod
    def zero(cls, order: int) -> "TruncatedSeries":
        return cls([], order)

    @classmethod
    def one(cls, order: int) -> "TruncatedSeries":
        return cls([1], order)

    @classmethod
    def z(cls, order: int) -> "TruncatedSeries":
        return cls([0, 1], order)

    @classmethod
    def from_exponential(cls, egf, order: int | None = None) -> "TruncatedSeries":
        """Build from exponential coefficients ``egf[n] = n! [z^n]``."""
        return cls([_coerce(c) * Fraction(1, factorial(n)) for n, c in enumerate(egf)], order)

    @classmethod
    def from_function(cls, fn, order: int) -> "TruncatedSeries":
        return cls([fn(n) for n in range(order + 1)])

    # accessors

    @property
    def order(self) -> int:
        return len(self._coeffs) - 1

    @property
    def coeffs(self) -> tuple:
        return self._coeffs

    def __getitem__(self, n):
        if isinstance(n, slice):
            return self._coeffs[n]
        if n < 0:
            raise IndexError(n)
        if n > self.order:
            raise IndexError(f"coefficient {n} is beyond the truncation order {self.order}")
        return self._coeffs[n]

    def __len__(self):
        return len(self._coeffs)

    def __iter__(self):
        return iter(self._coeffs)

    def egf(self, n: int):
        """Exponential coefficient ``n! [z^n]``."""
        return self[n] * factorial(n)

    def exponential_coefficients(self) -> list:
        return [c * factorial(n) for n, c in enumerate(self._coeffs)]

    def truncate(self, order: int) -> "TruncatedSeries":
        if order > self.order:
            raise SeriesError(f"cannot extend a series of order {self.order} to {order}")
        return TruncatedSeries(self._coeffs[: order + 1])

    def map(self, fn) -> "TruncatedSeries":
        return TruncatedSeries([fn(c) for c in self._coeffs])

    def __eq__(self, other):
        if isinstance(other, TruncatedSeries):
            return self._coeffs == other._coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self._coeffs)

    def __repr__(self):
        terms = ", ".join(format_rational(c) if isinstance(c, (int, Fraction)) else repr(c)
                          for c in self._coeffs)
        return f"TruncatedSeries([{terms}])"

    # arithmetic

    def __add__(self, other):
        if isinstance(other, TruncatedSeries):
            n = min(self.order, other.order)
            return TruncatedSeries([self._coeffs[i] + other._coeffs[i] for i in range(n + 1)])
        cs = list(self._coeffs)
        cs[0] = cs[0] + _coerce(other)
        return TruncatedSeries(cs)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries([-c for c in self._coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            return ps_mul(self, other)
        other = _coerce(other)
        return TruncatedSeries([c * other for c in self._coeffs])

    def __rmul__(self, other):
        other = _coerce(other)
        return TruncatedSeries([other * c for c in self._coeffs])

    def __truediv__(self, other):
        if isinstance(other, TruncatedSeries):
            return ps_mul(self, ps_inv(other))
        inv = Fraction(1) / _coerce(other)
        return self * inv

    def __pow__(self, e):
        return ps_pow(self, e)

    def shift(self, k: int = 1) -> "TruncatedSeries":
        """Multiply by ``z^k``, keeping the order."""
        zero = self._coeffs[0] * 0
        return TruncatedSeries([zero] * k + list(self._coeffs[: self.order + 1 - k]))

    def divide_by_z(self) -> "TruncatedSeries":
        """``a(z)/z``; the constant term must vanish.  Order drops by one."""
        if self._coeffs[0] != 0:
            raise SeriesError("series is not divisible by z")
        if self.order == 0:
            raise SeriesError("order-0 series cannot be divided by z")
        return TruncatedSeries(self._coeffs[1:])

    def __call__(self, value):
        """Evaluate the truncated polynomial at ``value`` (Horner)."""
        acc = self._coeffs[-1] * 1
        for c in reversed(self._coeffs[:-1]):
            acc = acc * value + c
        return acc

    # serialization

    def to_json(self) -> str:
        return json.dumps({"order": self.order,
                           "coeffs": [format_rational(c) for c in self._coeffs]})

    @classmethod
    def from_json(cls, text: str) -> "TruncatedSeries":
        data = json.loads(text)
        return cls([as_rational(c) for c in data["coeffs"]], data["order"])


def ps_mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product, truncated at the smaller order."""
    n = min(a.order, b.order)
    ac, bc = a.coeffs, b.coeffs
    out = []
    for m in range(n + 1):
        acc = ac[0] * bc[m]
        for k in range(1, m + 1):
            acc = acc + ac[k] * bc[m - k]
        out.append(acc)
    return TruncatedSeries(out)


def ps_inv(a: TruncatedSeries) -> TruncatedSeries:
    """Reciprocal ``1/a``; needs an invertible constant term."""
    a0 = a[0]
    if a0 == 0:
        raise SeriesError("reciprocal needs a nonzero constant term")
    inv0 = Fraction(1) / a0
    out = [inv0]
    for n in range(1, a.order + 1):
        acc = a[1] * out[n - 1]
        for k in range(2, n + 1):
            acc = acc + a[k] * out[n - k]
        out.append(-acc * inv0)
    return TruncatedSeries(out)


def ps_exp(a: TruncatedSeries) -> TruncatedSeries:
    """``exp(a)`` for ``a(0) = 0``, by the recurrence ``n b_n = sum k a_k b_{n-k}``."""
    if a[0] != 0:
        raise SeriesError("exp needs a zero constant term")
    out = [a[0] * 0 + 1]
    for n in range(1, a.order + 1):
        acc = a[1] * out[n - 1]
        for k in range(2, n + 1):
            acc = acc + (k * a[k]) * out[n - k]
        out.append(acc * Fraction(1, n))
    return TruncatedSeries(out)


def ps_log(a: TruncatedSeries) -> TruncatedSeries:
    """``log(a)`` for ``a(0) = 1``."""
    if a[0] != 1:
        raise SeriesError("log needs constant term 1")
    out = [a[0] * 0]
    for n in range(1, a.order + 1):
        acc = n * a[n]
        for k in range(1, n):
            acc = acc - (k * out[k]) * a[n - k]
        out.append(acc * Fraction(1, n))
    return TruncatedSeries(out)


def ps_pow(a: TruncatedSeries, e) -> TruncatedSeries:
    """``a^e`` for ``a(0) = 1`` and any exponent ``e`` (rational or symbolic).

    Integer exponents still go through exp/log so the result does not
    depend on the route; both agree exactly.
    """
    if a[0] != 1:
        raise SeriesError("pow needs constant term 1")
    return ps_exp(ps_log(a) * _coerce(e))


def ps_int_pow(a: TruncatedSeries, k: int) -> TruncatedSeries:
    """``a^k`` for a nonnegative integer ``k`` by repeated squaring."""
    if k < 0:
        return ps_int_pow(ps_inv(a), -k)
    result = TruncatedSeries.one(a.order)
    base = a
    while k:
        if k & 1:
            result = ps_mul(result, base)
        k >>= 1
        if k:
            base = ps_mul(base, base)
    return result


def ps_compose(outer: TruncatedSeries, inner: TruncatedSeries) -> TruncatedSeries:
    """``outer(inner(z))`` for ``inner(0) = 0``.

    Horner evaluation: ``order`` series products, so O(N^3) coefficient
    operations overall.
    """
    if inner[0] != 0:
        raise SeriesError("composition needs an inner series with zero constant term")
    n = min(outer.order, inner.order)
    inner = inner.truncate(n)
    acc = TruncatedSeries([outer[n]], n)
    for i in range(n - 1, -1, -1):
        acc = ps_mul(acc, inner) + outer[i]
    return acc


def ps_derive(a: TruncatedSeries) -> TruncatedSeries:
    """Derivative; the order drops by one."""
    if a.order == 0:
        return TruncatedSeries([a[0] * 0])
    return TruncatedSeries([(n + 1) * a[n + 1] for n in range(a.order)])


def ps_integrate(a: TruncatedSeries) -> TruncatedSeries:
    """Antiderivative with zero constant term; the order rises by one."""
    return TruncatedSeries([a[0] * 0] + [c * Fraction(1, n + 1) for n, c in enumerate(a.coeffs)])
