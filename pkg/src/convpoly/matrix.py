"""Convolution (Jabotinsky) matrices.

Entry ``(n, k)`` of the matrix of ``f`` is ``f_{nk} = n! [x^k] F_n(x)``,
with ``1 <= k <= n <= n_max``.  Indices are 1-based as in the usual printed
triangles; row 0 is implicit (``f_00 = 1``).  The product ``F G`` is the
matrix of ``g(f(z))``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from .family import Family, family_from
from .poly import XPolynomial
from .series import (SeriesError, TruncatedSeries, as_rational, format_rational, ps_int_pow,
                     ps_log, ps_pow)


@dataclass(frozen=True)
class ConvolutionTriangle:
    rows: tuple  # rows[n-1] = (f_{n1}, ..., f_{nn})

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(tuple(as_rational(c) if isinstance(c, (int, str))
                                                     else c for c in r) for r in self.rows))
        for n, r in enumerate(self.rows, start=1):
            if len(r) != n:
                raise ValueError(f"row {n} has {len(r)} entries")

    @property
    def n_max(self) -> int:
        return len(self.rows)

    def __getitem__(self, nk):
        n, k = nk
        if n == 0 or k == 0:
            return Fraction(1) if n == k else Fraction(0)
        if k > n or k < 0 or n < 0:
            return Fraction(0)
        return self.rows[n - 1][k - 1]

    def first_column(self) -> list:
        return [r[0] for r in self.rows]

    def column(self, k: int) -> list:
        return [r[k - 1] for r in self.rows[k - 1:]]

    def row_sums(self) -> list:
        return [sum(r, Fraction(0)) for r in self.rows]

    def truncate(self, n_max: int) -> "ConvolutionTriangle":
        return ConvolutionTriangle(self.rows[:n_max])

    def to_series(self) -> TruncatedSeries:
        """The exponent series ``f(z)`` read from the first column."""
        return TruncatedSeries.from_exponential([0] + self.first_column())

    def to_tsv(self) -> str:
        return "\n".join("\t".join(format_rational(c) for c in r) for r in self.rows) + "\n"

    def to_json(self) -> str:
        return json.dumps({"n_max": self.n_max,
                           "rows": [[format_rational(c) for c in r] for r in self.rows]})

    @classmethod
    def from_json(cls, text: str) -> "ConvolutionTriangle":
        data = json.loads(text)
        return cls([[as_rational(c) for c in r] for r in data["rows"]])

    @classmethod
    def identity(cls, n_max: int) -> "ConvolutionTriangle":
        return cls([[Fraction(int(k == n)) for k in range(1, n + 1)] for n in range(1, n_max + 1)])

    def has_unit_diagonal(self) -> bool:
        return all(r[-1] == 1 for r in self.rows)


@dataclass(frozen=True)
class QMatrix:
    """Lower-triangular matrix whose entries are polynomials in ``q``."""

    rows: tuple  # of tuples of XPolynomial

    @property
    def n_max(self) -> int:
        return len(self.rows)

    def __getitem__(self, nk) -> XPolynomial:
        n, k = nk
        if k > n:
            return XPolynomial()
        return self.rows[n - 1][k - 1]

    def at(self, q) -> ConvolutionTriangle:
        q = as_rational(q)
        return ConvolutionTriangle([[p(q) for p in r] for r in self.rows])

    def derivative(self) -> "QMatrix":
        return QMatrix(tuple(tuple(p.derivative() for p in r) for r in self.rows))

    def to_json(self) -> str:
        return json.dumps({"n_max": self.n_max,
                           "rows": [[[format_rational(c) for c in p.coeffs] for p in r]
                                    for r in self.rows]})


# construction

def triangle_from(f: TruncatedSeries, n_max: int | None = None) -> ConvolutionTriangle:
    """Matrix of ``f`` via ``f_{nk} = sum_j C(n-1, j-1) f_j f_{(n-j)(k-1)}``.

    The first column holds the exponential coefficients of ``f``.
    """
    if n_max is None:
        n_max = f.order
    if f[0] != 0:
        raise SeriesError("the exponent series must have zero constant term")
    fj = [f.egf(j) for j in range(n_max + 1)]
    # full[n][k] with row/column 0 included
    full = [[Fraction(0)] * (n_max + 1) for _ in range(n_max + 1)]
    full[0][0] = Fraction(1)
    for n in range(1, n_max + 1):
        for k in range(1, n + 1):
            acc = Fraction(0)
            for j in range(1, n - k + 2):
                prev = full[n - j][k - 1]
                if prev:
                    acc += comb(n - 1, j - 1) * fj[j] * prev
            full[n][k] = acc
    return ConvolutionTriangle([full[n][1:n + 1] for n in range(1, n_max + 1)])


def triangle_from_exponential(fj, n_max: int | None = None) -> ConvolutionTriangle:
    """Matrix from the first column ``f_1, f_2, ...``."""
    fj = list(fj)
    return triangle_from(TruncatedSeries.from_exponential([0] + fj), n_max or len(fj))


def triangle_of_family(fam: Family) -> ConvolutionTriangle:
    return ConvolutionTriangle([fam.row(n) for n in range(1, fam.order + 1)])


def family_of_triangle(F: ConvolutionTriangle) -> Family:
    polys = [XPolynomial([1])]
    for n in range(1, F.n_max + 1):
        inv = Fraction(1, factorial(n))
        polys.append(XPolynomial([0] + [c * inv for c in F.rows[n - 1]]))
    return Family(polys)


# algebra

def _full(F) -> list:
    """Square list-of-lists with 1-based indices padded by a zero row/column 0."""
    n_max = F.n_max
    zero = Fraction(0) if isinstance(F, ConvolutionTriangle) else XPolynomial()
    M = [[zero] * (n_max + 1) for _ in range(n_max + 1)]
    for n in range(1, n_max + 1):
        for k in range(1, n + 1):
            M[n][k] = F.rows[n - 1][k - 1]
    return M


def _lower_mul(A: list, B: list) -> list:
    n_max = len(A) - 1
    zero = A[0][0] * 0
    C = [[zero] * (n_max + 1) for _ in range(n_max + 1)]
    for n in range(1, n_max + 1):
        for k in range(1, n + 1):
            acc = zero
            for j in range(k, n + 1):
                a, b = A[n][j], B[j][k]
                if a and b:
                    acc = acc + a * b
            C[n][k] = acc
    return C


def _rows(M: list) -> list:
    return [M[n][1:n + 1] for n in range(1, len(M))]


def triangle_mul(F: ConvolutionTriangle, G: ConvolutionTriangle) -> ConvolutionTriangle:
    """Ordinary matrix product; the matrix of ``g(f(z))``."""
    if F.n_max != G.n_max:
        raise ValueError("triangles must have the same size")
    return ConvolutionTriangle(_rows(_lower_mul(_full(F), _full(G))))


def triangle_sub_identity(F: ConvolutionTriangle) -> list:
    M = _full(F)
    for n in range(1, F.n_max + 1):
        M[n][n] -= 1
    return M


def _nilpotent_powers(F: ConvolutionTriangle) -> list:
    """``[(F-I)^0, (F-I)^1, ..., (F-I)^{n_max-1}]``; higher powers vanish."""
    if not F.has_unit_diagonal():
        raise SeriesError("fractional powers need a unit diagonal (f'(0) = 1)")
    D = triangle_sub_identity(F)
    I = _full(ConvolutionTriangle.identity(F.n_max))
    powers = [I]
    for _ in range(1, F.n_max):
        powers.append(_lower_mul(powers[-1], D))
    return powers


def _binomial_poly(l: int) -> XPolynomial:
    return XPolynomial.binomial(l)


def triangle_power(F: ConvolutionTriangle, q=None):
    """``F^q = sum_l C(q, l) (F - I)^l``; the sum stops at ``l = n_max - 1``.

    With a numeric ``q`` this returns a :class:`ConvolutionTriangle`; with
    ``q=None`` it returns the :class:`QMatrix` of polynomials in ``q``.
    """
    powers = _nilpotent_powers(F)
    n_max = F.n_max
    if q is not None:
        q = as_rational(q)
        coeffs = [Fraction(1)]
        for l in range(1, n_max):
            coeffs.append(coeffs[-1] * (q - l + 1) / l)
        rows = []
        for n in range(1, n_max + 1):
            rows.append([sum((coeffs[l] * powers[l][n][k] for l in range(n - k + 1)), Fraction(0))
                         for k in range(1, n + 1)])
        return ConvolutionTriangle(rows)
    binoms = [_binomial_poly(l) for l in range(n_max)]
    rows = []
    for n in range(1, n_max + 1):
        row = []
        for k in range(1, n + 1):
            acc = XPolynomial()
            for l in range(n - k + 1):
                if powers[l][n][k]:
                    acc = acc + binoms[l] * powers[l][n][k]
            row.append(acc)
        rows.append(tuple(row))
    return QMatrix(tuple(rows))


def triangle_power_interpolated(F: ConvolutionTriangle, m: int | None = None) -> QMatrix:
    """``F^q`` from the integer powers ``F^0..F^m`` by Lagrange interpolation.

    Entry ``(n, k)`` is ``sum_j f^{(j)}_{nk} C(q, j) C(q-j-1, m-j) (-1)^{m-j}``,
    valid for any ``m >= n - k``.
    """
    if not F.has_unit_diagonal():
        raise SeriesError("fractional powers need a unit diagonal (f'(0) = 1)")
    n_max = F.n_max
    if m is None:
        m = n_max - 1
    if m < n_max - 1:
        raise ValueError("m must be at least n_max - 1")
    integer_powers = [_full(ConvolutionTriangle.identity(n_max))]
    base = _full(F)
    for _ in range(m):
        integer_powers.append(_lower_mul(integer_powers[-1], base))
    weights = []
    for j in range(m + 1):
        # C(q, j) C(q - j - 1, m - j) (-1)^{m-j}
        w = XPolynomial.binomial(j) * XPolynomial.binomial(m - j, shift=-j - 1) * (-1) ** (m - j)
        weights.append(w)
    rows = []
    for n in range(1, n_max + 1):
        row = []
        for k in range(1, n + 1):
            acc = XPolynomial()
            for j in range(m + 1):
                if integer_powers[j][n][k]:
                    acc = acc + weights[j] * integer_powers[j][n][k]
            row.append(acc)
        rows.append(tuple(row))
    return QMatrix(tuple(rows))


def triangle_log(F: ConvolutionTriangle) -> ConvolutionTriangle:
    """``ln F = (F-I) - (F-I)^2/2 + (F-I)^3/3 - ...`` (finite; not a convolution matrix)."""
    powers = _nilpotent_powers(F)
    n_max = F.n_max
    rows = []
    for n in range(1, n_max + 1):
        rows.append([sum((Fraction((-1) ** (l + 1), l) * powers[l][n][k]
                          for l in range(1, n - k + 1)), Fraction(0))
                     for k in range(1, n + 1)])
    return ConvolutionTriangle(rows)


def iterates_nonnegative(f: TruncatedSeries, n_max: int | None = None) -> bool:
    """True when the first column of ``ln F`` is nonnegative through ``n_max``.

    For ``f'(0) = 1`` this is the test for every coefficient of the
    fractional iterates ``f^[q]``, ``q >= 0``, being nonnegative.
    """
    L = triangle_log(triangle_from(f, n_max))
    return all(c >= 0 for c in L.first_column())


def iterate_series(f: TruncatedSeries, q, n_max: int | None = None) -> TruncatedSeries:
    """The ``q``-th iterate ``f^[q](z)``: first column of ``F^q``."""
    F = triangle_from(f, n_max)
    return triangle_power(F, q).to_series()


def iterate_coefficients(f: TruncatedSeries, n_max: int | None = None) -> list:
    """Ordinary coefficients of ``f^[q]`` as polynomials in ``q`` (index 0..n_max)."""
    Q = triangle_power(triangle_from(f, n_max))
    out = [XPolynomial()]
    for n in range(1, Q.n_max + 1):
        out.append(Q[n, 1] * Fraction(1, factorial(n)))
    return out


# reversion and the closed forms behind it

def _normalized(f: TruncatedSeries):
    f1 = f[1]
    if f1 == 0:
        raise SeriesError("f'(0) = 0: the matrix has a zero diagonal and no inverse")
    if f1 == 1:
        return f, f1
    # h(z) = f(z / f1) has h'(0) = 1
    inv = Fraction(1) / f1 if isinstance(f1, (int, Fraction)) else 1 / f1
    return TruncatedSeries([c * inv ** n for n, c in enumerate(f.coeffs)]), f1


def hat_series(f: TruncatedSeries) -> TruncatedSeries:
    """``f(z) / z``, order one less than ``f``."""
    return f.divide_by_z()


def revert(f: TruncatedSeries) -> TruncatedSeries:
    """Compositional inverse ``g`` with ``g(f(z)) = z``, by Lagrange's formula.

    With ``F^(z) = f(z)/z`` and ``f'(0) = 1``, ``[z^n] g = F^_{n-1}(-n) / n``.
    Other nonzero ``f'(0)`` are normalized through ``f1 g(f(z/f1)) = z``.
    """
    h, f1 = _normalized(f)
    N = h.order
    hat = hat_series(h)
    out = [h[0] * 0, h[1] * 0 + 1]
    for n in range(2, N + 1):
        out.append(ps_pow(hat, -n)[n - 1] * Fraction(1, n))
    g = TruncatedSeries(out)
    if f1 == 1:
        return g
    return g * (Fraction(1) / f1 if isinstance(f1, (int, Fraction)) else 1 / f1)


def revert_matrix(F: ConvolutionTriangle) -> ConvolutionTriangle:
    """Inverse matrix via Lagrange: ``g_{nk} = (n-1)!/(k-1)! F^_{n-k}(-n)``."""
    h = F.to_series()
    if h[1] != 1:
        raise SeriesError("Lagrange's matrix formula is stated for f'(0) = 1")
    hat = hat_series(h)
    rows = []
    for n in range(1, F.n_max + 1):
        power = ps_pow(hat.truncate(n - 1), -n)
        rows.append([Fraction(factorial(n - 1), factorial(k - 1)) * power[n - k]
                     for k in range(1, n + 1)])
    return ConvolutionTriangle(rows)


def lagrange_entry(f: TruncatedSeries, n: int, k: int) -> Fraction:
    """``f_{nk} = n!/k! [z^{n-k}] (f(z)/z)^k``; with ``f'(0) = 1`` this is ``n!/k! F^_{n-k}(k)``."""
    if k > n:
        return Fraction(0)
    if k == 0:
        return Fraction(int(n == 0))
    hat = hat_series(f.truncate(n))
    return Fraction(factorial(n), factorial(k)) * ps_int_pow(hat, k)[n - k]


@dataclass(frozen=True)
class ExtendedEntry:
    """``f_{y(y-k)}`` as a polynomial in ``y`` (degree at most ``2k``)."""

    k: int
    poly: XPolynomial

    def __call__(self, y):
        return self.poly(as_rational(y))


def hat_family(f: TruncatedSeries, N: int) -> Family:
    """Convolution family of ``F^(z) = f(z)/z`` (needs ``f'(0) = 1``)."""
    hat = hat_series(f)
    if hat[0] != 1:
        raise SeriesError("extended entries need f'(0) = 1")
    return family_from(ps_log(hat), N)


def extended_entry(f: TruncatedSeries, k: int) -> ExtendedEntry:
    """``f_{y(y-k)} = y^(k falling) F^_k(y - k)``."""
    fam = hat_family(f.truncate(k + 1), k)
    poly = XPolynomial.falling(k) * fam.polys[k].shift(-k)
    return ExtendedEntry(k, poly)


def extended(f: TruncatedSeries, n: int, k: int) -> Fraction:
    """Entry of the extended matrix for arbitrary integers ``n, k``; zero when ``k > n``."""
    if k > n:
        return Fraction(0)
    return extended_entry(f, n - k)(n)


def scale_triangle(F: ConvolutionTriangle, alpha, beta) -> ConvolutionTriangle:
    """Multiply row ``n`` by ``alpha^n`` and column ``k`` by ``beta^k``.

    This is the matrix of ``beta f(alpha z)``.  ``alpha = -1, beta = -1``
    attaches the signs ``(-1)^{n-k}``, i.e. ``f(z) -> -f(-z)``.
    """
    alpha, beta = as_rational(alpha), as_rational(beta)
    return ConvolutionTriangle([[c * alpha ** n * beta ** k for k, c in enumerate(r, start=1)]
                                for n, r in enumerate(F.rows, start=1)])


def circ_combine(F: ConvolutionTriangle, G: ConvolutionTriangle) -> ConvolutionTriangle:
    """``h_{nk} = sum_{i,j} C(n, j) f_{ji} g_{(n-j)(k-i)}`` (row/column 0 included).

    For convolution matrices this is the matrix of the product family
    ``H_n = sum F_k G_{n-k}``.
    """
    if F.n_max != G.n_max:
        raise ValueError("triangles must have the same size")
    n_max = F.n_max
    rows = []
    for n in range(1, n_max + 1):
        row = []
        for k in range(1, n + 1):
            acc = Fraction(0)
            for j in range(n + 1):
                for i in range(min(j, k) + 1):
                    a = F[j, i]
                    if a:
                        b = G[n - j, k - i]
                        if b:
                            acc += comb(n, j) * a * b
            row.append(acc)
        rows.append(row)
    return ConvolutionTriangle(rows)


def stirling_polynomial(n: int) -> XPolynomial:
    """``sigma_n(x)``, where ``x sigma_n(x) = [z^n] (z e^z / (e^z - 1))^x``."""
    from .catalog import catalog_series

    if n < 1:
        raise ValueError("sigma_0(x) = 1/x is not a polynomial")
    fam = family_from(catalog_series("stirling-poly", n), n)
    return fam.polys[n].divide_by_x()
