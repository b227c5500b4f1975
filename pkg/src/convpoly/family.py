"""Convolution families ``F_n(x) = [z^n] F(z)^x`` and constructions on them.

A family is stored as its explicit list of polynomials ``F_0..F_N``.  The
exponent series ``f(z) = ln F(z)`` can always be read back from the linear
coefficients, since ``[x] F_n(x) = [z^n] f(z)``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from .poly import XPolynomial
from .series import (SeriesError, TruncatedSeries, as_rational, format_rational, ps_compose,
                     ps_exp, ps_int_pow, ps_log, ps_mul, ps_pow)


@dataclass(frozen=True)
class Family:
    polys: tuple
    source: TruncatedSeries | None = field(default=None, compare=False)
    name: str | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "polys", tuple(self.polys))

    @property
    def order(self) -> int:
        return len(self.polys) - 1

    def __getitem__(self, n: int) -> XPolynomial:
        return self.polys[n]

    def __len__(self):
        return len(self.polys)

    def __call__(self, n: int, x):
        return self.polys[n](as_rational(x) if isinstance(x, (int, str)) else x)

    def row(self, n: int) -> list:
        """Matrix row ``f_{n1}..f_{nn}``: the coefficients of ``n! F_n(x)``."""
        nf = factorial(n)
        return [self.polys[n][k] * nf for k in range(1, n + 1)]

    def log_series(self) -> TruncatedSeries:
        """``f(z) = ln F(z)``, recovered from the linear coefficients."""
        return TruncatedSeries([p[1] for p in self.polys])

    def series_at(self, x) -> TruncatedSeries:
        """``F(z)^x`` for a fixed number ``x``."""
        return TruncatedSeries([p(as_rational(x)) for p in self.polys])

    def is_degenerate(self) -> bool:
        return all(p.is_zero() for p in self.polys)

    def to_json(self) -> str:
        data = {"order": self.order,
                "rows": [[format_rational(c) for c in self.row(n)] for n in range(1, self.order + 1)]}
        if self.name:
            data["name"] = self.name
        return json.dumps(data)

    @classmethod
    def from_json(cls, text: str) -> "Family":
        data = json.loads(text)
        polys = [XPolynomial([1])]
        for n, row in enumerate(data["rows"], start=1):
            inv = Fraction(1, factorial(n))
            polys.append(XPolynomial([0] + [as_rational(c) * inv for c in row]))
        if len(polys) != data["order"] + 1:
            raise ValueError("row count does not match order")
        return cls(polys, name=data.get("name"))


def family_from(f: TruncatedSeries, N: int | None = None, name: str | None = None) -> Family:
    """The family of ``exp(x f(z))``, by extracting ``[z^n] f^k / k!``."""
    if N is None:
        N = f.order
    if N > f.order:
        raise SeriesError(f"series of order {f.order} cannot give a family of order {N}")
    if f[0] != 0:
        raise SeriesError("the exponent series must have zero constant term")
    f = f.truncate(N)
    table = [[Fraction(0)] * (N + 1) for _ in range(N + 1)]  # table[n][k]
    table[0][0] = Fraction(1)
    power = TruncatedSeries.one(N)
    for k in range(1, N + 1):
        power = ps_mul(power, f) * Fraction(1, k)
        for n in range(k, N + 1):
            table[n][k] = power[n]
    return Family([XPolynomial(row) for row in table], source=f, name=name)


def family_from_weak_condition(first_column, name: str | None = None) -> Family:
    """Solve ``F_n(2x) = sum_k F_k(x) F_{n-k}(x)`` row by row.

    ``first_column[n-1]`` is the free coefficient ``f_{n1} = n! [x] F_n``.
    Every other coefficient is forced: ``x^k`` for ``k > 1`` appears with
    weight ``2^k`` on the left and ``2`` on the right.
    """
    polys = [XPolynomial([1])]
    for n, fn1 in enumerate(first_column, start=1):
        rest = XPolynomial()
        for m in range(1, n):
            rest = rest + polys[m] * polys[n - m]
        coeffs = [Fraction(0), as_rational(fn1) / factorial(n)]
        for k in range(2, n + 1):
            coeffs.append(rest[k] / (2 ** k - 2))
        polys.append(XPolynomial(coeffs))
    return Family(polys, name=name)


# identity residuals; all return exact rationals that vanish for genuine families

def check_convolution(fam: Family, n: int, x, y) -> Fraction:
    x, y = as_rational(x), as_rational(y)
    lhs = fam.polys[n](x + y)
    rhs = sum((fam.polys[k](x) * fam.polys[n - k](y) for k in range(n + 1)), Fraction(0))
    return lhs - rhs


def check_weak_convolution(fam: Family, n: int, x) -> Fraction:
    return check_convolution(fam, n, x, x)


def check_derived_convolution(fam: Family, n: int, x, y) -> Fraction:
    """Residual of ``(x+y) sum k F_k(x) F_{n-k}(y) = x n F_n(x+y)``."""
    x, y = as_rational(x), as_rational(y)
    s = sum((k * fam.polys[k](x) * fam.polys[n - k](y) for k in range(n + 1)), Fraction(0))
    return (x + y) * s - x * n * fam.polys[n](x + y)


def _shifted_quotient(fam: Family, k: int, x, t) -> Fraction:
    """``F_k(x + t k) / (x + t k)`` in its total polynomial form (``k >= 1``)."""
    return fam.polys[k].divide_by_x()(x + t * k)


def _shifted(fam: Family, k: int, x, t) -> Fraction:
    """``x F_k(x + t k) / (x + t k)``, equal to 1 at ``k = 0``."""
    if k == 0:
        return Fraction(1)
    return x * _shifted_quotient(fam, k, x, t)


def check_t_identities(fam: Family, n: int, x, y, t) -> tuple[Fraction, Fraction]:
    """Residuals of the two shifted-argument identities that every family obeys.

    First:  (x+y) F_n(x+y+tn)/(x+y+tn) = sum_k xF_k(x+tk)/(x+tk) * yF_{n-k}(y+t(n-k))/(y+t(n-k)).
    Second: n F_n(x+y+tn)/(x+y+tn)     = sum_{k>=1} kF_k(x+tk)/(x+tk) * (same second factor).
    """
    x, y, t = as_rational(x), as_rational(y), as_rational(t)
    lhs1 = _shifted(fam, n, x + y, t)
    rhs1 = sum((_shifted(fam, k, x, t) * _shifted(fam, n - k, y, t) for k in range(n + 1)),
               Fraction(0))
    if n == 0:
        lhs2 = Fraction(0)
    else:
        lhs2 = n * _shifted_quotient(fam, n, x + y, t)
    rhs2 = sum((k * _shifted_quotient(fam, k, x, t) * _shifted(fam, n - k, y, t)
                for k in range(1, n + 1)), Fraction(0))
    return lhs1 - rhs1, lhs2 - rhs2


def generalized_binomial(a, n: int) -> Fraction:
    """``C(a, n)`` for rational ``a`` and integer ``n >= 0``."""
    a = as_rational(a)
    acc = Fraction(1)
    for j in range(n):
        acc *= a - j
    return acc / factorial(n)


def binomial_family_coefficient(t, x, n: int) -> Fraction:
    """``[z^n] B_t(z)^x = x (x+tn-1)(x+tn-2)...(x+tn-n+1) / n!``.

    The product form is used throughout, so the removable pole at
    ``x + tn = 0`` of ``C(x+tn, n) x/(x+tn)`` never arises.
    """
    t, x = as_rational(t), as_rational(x)
    if n == 0:
        return Fraction(1)
    acc = x
    for j in range(1, n):
        acc *= x + t * n - j
    return acc / factorial(n)


def rothe_residual(x, y, t, n: int) -> Fraction:
    """``sum_k C(x+t(n-k), n-k) C(y+tk, k) y/(y+tk) - C(x+y+tn, n)``."""
    x, y, t = as_rational(x), as_rational(y), as_rational(t)
    lhs = sum((generalized_binomial(x + t * (n - k), n - k) * binomial_family_coefficient(t, y, k)
               for k in range(n + 1)), Fraction(0))
    return lhs - generalized_binomial(x + y + t * n, n)


# named series

def binomial_series(t, N: int) -> TruncatedSeries:
    """``B_t(z)``, the solution of ``B = 1 + z B^t``, by fixed-point iteration."""
    t = as_rational(t)
    b = TruncatedSeries.one(0)
    # after pass k the coefficients through z^k are final, so pass k works at order k
    for k in range(1, N + 1):
        b = TruncatedSeries(list(b.coeffs) + [0], k - 1)
        if t.denominator == 1 and t >= 0:
            bt = ps_int_pow(b, int(t))
        else:
            bt = ps_pow(b, t)
        b = TruncatedSeries([1] + list(bt.coeffs), k)
    return TruncatedSeries(b.coeffs, N)


def tree_function(N: int) -> TruncatedSeries:
    """``T(z) = z exp(T(z))``, by fixed-point iteration."""
    T = TruncatedSeries.zero(N)
    for _ in range(N):
        T = ps_exp(T).shift(1)
    return T


def tree_polynomials(N: int) -> Family:
    """Family of ``(1 - T(z))^{-x}``; ``n! F_n`` is the tree polynomial ``t_n(x)``."""
    T = tree_function(N)
    return family_from(-ps_log(1 - T), N, name="tree-poly")


def idempotent_polynomials(N: int) -> Family:
    """Family of ``exp(x z e^z)``."""
    z = TruncatedSeries.z(N)
    return family_from(ps_mul(z, ps_exp(z)), N, name="idempotent")


# constructions producing new families

def umbral_substitute(F: Family, G: Family) -> Family:
    """Replace every ``x^k`` in ``F_n(x)`` by ``k! G_k(x)``.

    The result is the family of ``G(ln F(z))^x``.
    """
    if F.order != G.order:
        raise ValueError("families must share the same order")
    basis = [G.polys[k] * factorial(k) for k in range(G.order + 1)]
    polys = []
    for p in F.polys:
        acc = XPolynomial()
        for k, c in enumerate(p.coeffs):
            if c:
                acc = acc + basis[k] * c
        polys.append(acc)
    return Family(polys)


def t_shift(F: Family, t) -> Family:
    """``x F_n(x + tn) / (x + tn)``, computed as ``x Q_n(x + tn)`` with ``Q_n = F_n / x``."""
    t = as_rational(t)
    polys = [XPolynomial([1])]
    for n in range(1, F.order + 1):
        q = F.polys[n].divide_by_x()
        polys.append(q.shift(t * n).multiply_by_x())
    return Family(polys)


def t_shift_series(F_series: TruncatedSeries, t) -> TruncatedSeries:
    """Solve ``S(z) = F(z S(z)^t)`` for ``S`` with ``S(0) = 1``."""
    t = as_rational(t)
    N = F_series.order
    S = TruncatedSeries.one(N)
    for _ in range(N):
        S = ps_compose(F_series, ps_pow(S, t).shift(1))
    return S


def combine(F: Family, G: Family, t=0) -> Family:
    """``H_n(x) = sum_k F_k(x) G_{n-k}(x + tk)``: the family of ``(G(z) F(z G(z)^t))^x``."""
    if F.order != G.order:
        raise ValueError("families must share the same order")
    t = as_rational(t)
    N = F.order
    polys = []
    for n in range(N + 1):
        acc = XPolynomial()
        for k in range(n + 1):
            acc = acc + F.polys[k] * G.polys[n - k].shift(t * k)
        polys.append(acc)
    return Family(polys)


def scale_family(F: Family, alpha, beta) -> Family:
    """``alpha^n F_n(beta x)``."""
    alpha = as_rational(alpha)
    return Family([p.scale(beta) * alpha ** n for n, p in enumerate(F.polys)])


def tamper(F: Family, n: int = 2, delta=1) -> Family:
    """Copy of ``F`` with ``[x^n] F_n`` perturbed by ``delta``; a negative control.

    The linear coefficient is free in any family, so the perturbation goes
    to the top coefficient, which the convolution condition forces.
    """
    if n < 2:
        raise ValueError("only rows n >= 2 carry forced coefficients")
    polys = list(F.polys)
    polys[n] = polys[n] + XPolynomial([0] * n + [as_rational(delta)])
    return Family(polys, name=F.name)
