"""Dense univariate polynomials over the rationals."""
from __future__ import annotations

from fractions import Fraction
from math import factorial

from .series import _coerce, format_rational


class XPolynomial:
    """``coeffs[k]`` is the coefficient of ``x^k``; trailing zeros are trimmed."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs=()):
        cs = [_coerce(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self._coeffs = tuple(cs)

    @classmethod
    def constant(cls, c) -> "XPolynomial":
        return cls([c])

    @classmethod
    def x(cls) -> "XPolynomial":
        return cls([0, 1])

    @classmethod
    def falling(cls, n: int, shift=0) -> "XPolynomial":
        """``(x+shift)(x+shift-1)...(x+shift-n+1)``."""
        p = cls([1])
        for j in range(n):
            p = p * cls([Fraction(shift) - j, 1])
        return p

    @classmethod
    def rising(cls, n: int) -> "XPolynomial":
        p = cls([1])
        for j in range(n):
            p = p * cls([j, 1])
        return p

    @classmethod
    def binomial(cls, n: int, shift=0) -> "XPolynomial":
        """``C(x+shift, n)`` as a polynomial in ``x``."""
        return cls.falling(n, shift) * Fraction(1, factorial(n))

    @property
    def coeffs(self) -> tuple:
        return self._coeffs

    @property
    def degree(self) -> int:
        return len(self._coeffs) - 1

    def __getitem__(self, k: int):
        if 0 <= k < len(self._coeffs):
            return self._coeffs[k]
        return Fraction(0)

    def is_zero(self) -> bool:
        return not self._coeffs

    def __eq__(self, other):
        if isinstance(other, XPolynomial):
            return self._coeffs == other._coeffs
        if isinstance(other, (int, Fraction)):
            return self == XPolynomial([other])
        return NotImplemented

    def __hash__(self):
        return hash(self._coeffs)

    def __repr__(self):
        return "XPolynomial([" + ", ".join(format_rational(c) for c in self._coeffs) + "])"

    def __str__(self):
        if not self._coeffs:
            return "0"
        terms = []
        for k, c in enumerate(self._coeffs):
            if c == 0:
                continue
            tail = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            if tail and c == 1:
                terms.append(tail)
            elif tail and c == -1:
                terms.append("-" + tail)
            else:
                terms.append(format_rational(c) + ("*" + tail if tail else ""))
        return " + ".join(terms).replace("+ -", "- ")

    def __add__(self, other):
        if not isinstance(other, XPolynomial):
            other = XPolynomial([other])
        n = max(len(self._coeffs), len(other._coeffs))
        return XPolynomial([self[k] + other[k] for k in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return XPolynomial([-c for c in self._coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, XPolynomial):
            other = _coerce(other)
            return XPolynomial([c * other for c in self._coeffs])
        if not self._coeffs or not other._coeffs:
            return XPolynomial()
        out = [Fraction(0)] * (len(self._coeffs) + len(other._coeffs) - 1)
        for i, a in enumerate(self._coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other._coeffs):
                out[i + j] += a * b
        return XPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = XPolynomial([1])
        for _ in range(k):
            result = result * self
        return result

    def __call__(self, value):
        """Horner evaluation; ``value`` may be a number or another polynomial."""
        if not self._coeffs:
            return Fraction(0) if not isinstance(value, XPolynomial) else XPolynomial()
        acc = self._coeffs[-1]
        if isinstance(value, XPolynomial):
            acc = XPolynomial([acc])
        for c in reversed(self._coeffs[:-1]):
            acc = acc * value + c
        return acc

    def shift(self, c) -> "XPolynomial":
        """``p(x + c)``."""
        return self(XPolynomial([c, 1]))

    def compose(self, other: "XPolynomial") -> "XPolynomial":
        return self(other)

    def scale(self, beta) -> "XPolynomial":
        """``p(beta * x)``."""
        beta = _coerce(beta)
        return XPolynomial([c * beta ** k for k, c in enumerate(self._coeffs)])

    def divide_by_x(self) -> "XPolynomial":
        if self[0] != 0:
            raise ValueError("polynomial does not vanish at 0")
        return XPolynomial(self._coeffs[1:])

    def multiply_by_x(self) -> "XPolynomial":
        if not self._coeffs:
            return self
        return XPolynomial((Fraction(0),) + self._coeffs)

    def derivative(self) -> "XPolynomial":
        return XPolynomial([k * c for k, c in enumerate(self._coeffs)][1:])

    def divmod_linear(self, root) -> tuple["XPolynomial", Fraction]:
        """Synthetic division by ``(x - root)``: returns quotient and remainder."""
        root = _coerce(root)
        if not self._coeffs:
            return XPolynomial(), Fraction(0)
        out = []
        acc = Fraction(0)
        for c in reversed(self._coeffs):
            acc = acc * root + c
            out.append(acc)
        remainder = out.pop()
        return XPolynomial(reversed(out)), remainder
