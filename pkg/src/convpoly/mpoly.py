"""Sparse multivariate polynomials with Fraction coefficients.

Just enough algebra to carry symbolic atoms ``f2, f3, ...`` through the
series machinery: ring operations, scalar division and substitution.
"""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational

from .series import format_rational

# a monomial is a sorted tuple of (variable, exponent) pairs; () is the unit


def _mono_mul(a: tuple, b: tuple) -> tuple:
    if not a:
        return b
    if not b:
        return a
    exps = dict(a)
    for v, e in b:
        exps[v] = exps.get(v, 0) + e
    return tuple(sorted(exps.items()))


class MPoly:
    __slots__ = ("terms",)

    def __init__(self, terms=None):
        if terms is None:
            terms = {}
        elif isinstance(terms, (int, Rational)):
            terms = {(): Fraction(terms)} if terms else {}
        self.terms = {m: c for m, c in terms.items() if c != 0}

    @classmethod
    def var(cls, name: str) -> "MPoly":
        return cls({((name, 1),): Fraction(1)})

    @staticmethod
    def _lift(other):
        if isinstance(other, MPoly):
            return other
        if isinstance(other, (int, Rational)):
            return MPoly(Fraction(other))
        return None

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return MPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return MPoly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Rational)):
            other = Fraction(other)
            return MPoly({m: c * other for m, c in self.terms.items()})
        if not isinstance(other, MPoly):
            return NotImplemented
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        return MPoly(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Rational)):
            return self * (Fraction(1) / Fraction(other))
        other = self._lift(other)
        if other is not None and other.is_constant():
            return self * (Fraction(1) / other.constant_term())
        raise ZeroDivisionError("division by a non-constant polynomial")

    def __rtruediv__(self, other):
        if self.is_constant():
            return MPoly(Fraction(other) / self.constant_term())
        raise ZeroDivisionError("division by a non-constant polynomial")

    def __pow__(self, k: int):
        result = MPoly(1)
        for _ in range(k):
            result = result * self
        return result

    def is_constant(self) -> bool:
        return all(m == () for m in self.terms)

    def constant_term(self) -> Fraction:
        return self.terms.get((), Fraction(0))

    def __eq__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def variables(self) -> set:
        return {v for m in self.terms for v, _ in m}

    def degree_in(self, name: str) -> int:
        return max((dict(m).get(name, 0) for m in self.terms), default=0)

    def coefficient(self, name: str, power: int) -> "MPoly":
        """Coefficient of ``name**power``, as a polynomial in the other variables."""
        out = {}
        for m, c in self.terms.items():
            d = dict(m)
            if d.get(name, 0) == power:
                d.pop(name, None)
                out[tuple(sorted(d.items()))] = c
        return MPoly(out)

    def subs(self, values: dict):
        """Substitute numbers (or polynomials) for variables."""
        acc = MPoly()
        for m, c in self.terms.items():
            term = MPoly(c)
            for v, e in m:
                term = term * (values[v] ** e if v in values else MPoly.var(v) ** e)
            acc = acc + term
        if acc.is_constant():
            return acc.constant_term()
        return acc

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, key=lambda m: (sum(e for _, e in m), m)):
            c = self.terms[m]
            mono = "*".join(v if e == 1 else f"{v}^{e}" for v, e in m)
            if not mono:
                parts.append(format_rational(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{format_rational(c)}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")
