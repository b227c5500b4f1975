"""Saddle-point approximation of convolution polynomials.

For ``F(z) = exp(f(z))`` with ``f(z) = z + f_2 z^2/2! + ...`` the saddle
point ``s`` solves ``s f'(s) = n/x`` and

    F~_n(x) = F(s)^x (n / (e s))^n / n!.

The ratio ``F_n(x) / F~_n(x)`` is a formal series in ``y = n/x`` and
``1/x``.  The float layer below works in the log domain; the exact layer
(:func:`ratio_series`, :func:`intermediate_expansion`) works over
rationals or over polynomials in symbolic ``f_k``.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from .matrix import revert, triangle_from
from .mpoly import MPoly
from .series import (SeriesError, TruncatedSeries, as_rational, ps_compose, ps_derive, ps_exp,
                     ps_int_pow, ps_log, ps_mul, ps_pow)


class SaddlePointError(RuntimeError):
    def __init__(self, message, last_iterate):
        super().__init__(f"{message} (last iterate s={last_iterate!r})")
        self.last_iterate = last_iterate


class DomainWarning(UserWarning):
    pass


NEWTON_TOL = 1e-12
NEWTON_MAX_ITER = 64


# float evaluation of a truncated exponent series

def _float_coeffs(f: TruncatedSeries) -> list[float]:
    return [float(c) for c in f.coeffs]


def derivative_at(coeffs: list[float], k: int, s: float) -> float:
    """``f^{(k)}(s)`` from ordinary coefficients."""
    acc = 0.0
    for m in range(len(coeffs) - 1, k - 1, -1):
        acc = acc * s + coeffs[m] * (math.factorial(m) // math.factorial(m - k))
    return acc


def _check_normalized(f: TruncatedSeries):
    if f[0] != 0 or f[1] != 1:
        raise SeriesError("asymptotics assume f(0) = 0 and f'(0) = 1")


def saddle_seed(f: TruncatedSeries, y: float) -> float:
    """``s`` from ``s/y = 1 - f2 y + (4 f2^2 - f3) y^2/2 + (15 f2 f3 - 30 f2^3 - f4) y^3/6``."""
    f2, f3, f4 = (float(f.egf(k)) if k <= f.order else 0.0 for k in (2, 3, 4))
    ratio = (1 - f2 * y + (4 * f2 ** 2 - f3) * y ** 2 / 2
             + (15 * f2 * f3 - 30 * f2 ** 3 - f4) * y ** 3 / 6)
    if not (0 < ratio < 4):
        ratio = 1.0
    return y * ratio


def saddle_solve(f: TruncatedSeries, n, x) -> float:
    """Solve ``s f'(s) = n/x`` by damped Newton iteration from the series seed."""
    _check_normalized(f)
    y = n / x
    if y > 0.5:
        warnings.warn(f"y = n/x = {y:.3g} is outside the small-y regime", DomainWarning,
                      stacklevel=2)
    cs = _float_coeffs(f)

    def residual(s):
        return s * derivative_at(cs, 1, s) - y

    s = saddle_seed(f, y)
    r = residual(s)
    for _ in range(NEWTON_MAX_ITER):
        if abs(r) <= NEWTON_TOL * y:
            return s
        slope = derivative_at(cs, 1, s) + s * derivative_at(cs, 2, s)
        if slope == 0 or not math.isfinite(slope):
            raise SaddlePointError("zero or non-finite Newton slope", s)
        step = r / slope
        for _ in range(60):
            trial = s - step
            rt = residual(trial)
            if math.isfinite(rt) and abs(rt) < abs(r):
                break
            step /= 2
        else:
            raise SaddlePointError("damping failed to reduce the residual", s)
        s, r = trial, rt
    if abs(r) <= NEWTON_TOL * y:
        return s
    raise SaddlePointError(f"Newton did not converge in {NEWTON_MAX_ITER} iterations", s)


def log_approx(f: TruncatedSeries, n, x, s: float | None = None) -> float:
    if s is None:
        s = saddle_solve(f, n, x)
    fs = derivative_at(_float_coeffs(f), 0, s)
    return x * fs + n * (math.log(n) - 1 - math.log(s)) - math.lgamma(n + 1)


def approx(f: TruncatedSeries, n, x) -> float:
    """``F~_n(x) = F(s)^x (n/(e s))^n / n!``."""
    return math.exp(log_approx(f, n, x))


def corrected_ratio(f: TruncatedSeries, n, x, s: float | None = None) -> float:
    """Two-term estimate of ``F_n(x)/F~_n(x)`` from the derivatives ``d_k = f^{(k)}(s)``."""
    if s is None:
        s = saddle_solve(f, n, x)
    y = n / x
    cs = _float_coeffs(f)
    d2, d3, d4 = (derivative_at(cs, k, s) for k in (2, 3, 4))
    base = 1 + s * s * d2 / y
    A = (s ** 3 * d2 ** 3 / (12 * y) - 3 * s * d2 ** 2 / 4 - s * s * d2 * d3 / 2
         - 5 * s ** 3 * d3 ** 2 / 24 + y * d3 / 3 + s ** 3 * d2 * d4 / 8 + s * y * d4 / 8)
    return base ** -0.5 + (s / y) ** 3 * A / (x * base ** 3.5)


def corrected_approx(f: TruncatedSeries, n, x) -> float:
    s = saddle_solve(f, n, x)
    return math.exp(log_approx(f, n, x, s)) * corrected_ratio(f, n, x, s)


def _log_fraction(v: Fraction) -> float:
    if v <= 0:
        raise ValueError("log of a nonpositive value")
    return math.log(v.numerator) - math.log(v.denominator)


def exact_value(f: TruncatedSeries, n: int, x) -> Fraction:
    """``F_n(x) = [z^n] exp(x f(z))`` exactly, for rational ``x``."""
    if f.order < n:
        raise SeriesError(f"need the exponent series through z^{n}, have z^{f.order}")
    x = as_rational(x) if not isinstance(x, float) else Fraction(x)
    return ps_exp(f.truncate(n) * x)[n]


@dataclass(frozen=True)
class SaddleReport:
    n: int
    x: float
    y: float
    s: float
    approx: float
    exact: float
    ratio: float
    ratio_series_estimate: float
    corrected: float

    FIELDS = ("n", "x", "y", "s", "exact", "approx", "corrected", "ratio", "predicted_ratio")

    def as_row(self) -> dict:
        return {"n": self.n, "x": self.x, "y": self.y, "s": self.s, "exact": self.exact,
                "approx": self.approx, "corrected": self.corrected, "ratio": self.ratio,
                "predicted_ratio": self.ratio_series_estimate}


def compare(f: TruncatedSeries, n: int, x, series: "RatioSeries | None" = None) -> SaddleReport:
    """Exact value, approximation, corrected approximation and ratio for one ``(n, x)``."""
    s = saddle_solve(f, n, x)
    la = log_approx(f, n, x, s)
    ex = exact_value(f, n, x)
    le = _log_fraction(ex)
    ratio = math.exp(le - la)
    if series is None:
        series = ratio_series(f, 3, 1)
    predicted = series.evaluate(n / x, x)
    return SaddleReport(n=n, x=float(x), y=n / x, s=s, approx=math.exp(la), exact=math.exp(le),
                        ratio=ratio, ratio_series_estimate=predicted,
                        corrected=math.exp(la) * corrected_ratio(f, n, x, s))


# exact ratio series

def symbolic_exponent_series(max_k: int, order: int) -> TruncatedSeries:
    """``z + f2 z^2/2! + ... + f_{max_k} z^{max_k}/max_k!`` with symbolic ``f_k``."""
    cs = [MPoly(0), MPoly(1)]
    for k in range(2, order + 1):
        cs.append(MPoly.var(f"f{k}") * Fraction(1, factorial(k)) if k <= max_k else MPoly(0))
    return TruncatedSeries(cs)


def saddle_ratio_series(f: TruncatedSeries, order: int) -> TruncatedSeries:
    """``s/y`` as a series in ``y``, by reverting ``h(s) = s f'(s)``."""
    if f.order < order + 2:
        raise SeriesError(f"need the exponent series through z^{order + 2}")
    h = ps_mul(TruncatedSeries.z(f.order), ps_derive(f))
    s = revert(h.truncate(order + 1))
    return s.divide_by_z()


@dataclass(frozen=True)
class RatioSeries:
    c: tuple  # c[i][j] = coefficient of y^i x^{-j}

    @property
    def max_i(self) -> int:
        return len(self.c) - 1

    @property
    def max_j(self) -> int:
        return len(self.c[0]) - 1

    def __getitem__(self, ij):
        i, j = ij
        return self.c[i][j]

    def evaluate(self, y: float, x: float) -> float:
        return sum(float(self.c[i][j]) * y ** i * x ** -j
                   for i in range(self.max_i + 1) for j in range(self.max_j + 1))

    def substitute(self, values: dict) -> "RatioSeries":
        return RatioSeries(tuple(tuple(c.subs(values) if isinstance(c, MPoly) else c for c in row)
                                 for row in self.c))


def ratio_series(f: TruncatedSeries | None, max_i: int, max_j: int) -> RatioSeries:
    """Coefficients ``c_ij`` of ``F_n(x)/F~_n(x) = sum c_ij y^i x^{-j}``.

    Computed as ``sum_j P_j / (-n)^j`` with
    ``P_j = sum_i p_ji s^{j+i} R^{(j+i)}(s)/(j+i)!`` and ``R`` the neglected
    factor ``exp(x sum_{m>=2} f^{(m)}(s) (z-s)^m / m!)``; ``s`` is eliminated
    through the ``s/y`` series.  ``f=None`` gives symbolic ``f2, f3, ...``
    (restricted to ``max_i <= 4``).
    """
    I, J = max_i, max_j
    jmax = 2 * J + I
    lmax = jmax + I
    need = lmax + I + 2
    if f is None:
        if I > 4:
            raise ValueError("symbolic mode supports max_i <= 4")
        f = symbolic_exponent_series(I + J + 1, need)
    else:
        _check_normalized(f)
        if f.order < need:
            raise SeriesError(f"need the exponent series through z^{need}, have z^{f.order}")
        f = f.truncate(need)

    sigma = saddle_ratio_series(f, I)           # s/y, order I
    y = TruncatedSeries.z(I)
    s = ps_mul(sigma, y)                        # s(y), order I
    zero = f[0] * 0
    one = zero + 1

    # d_m(y) / m! for m = 2..lmax
    derivs = {}
    D = f
    for m in range(1, lmax + 1):
        D = ps_derive(D)
        if m >= 2:
            derivs[m] = ps_compose(D, s) * Fraction(1, factorial(m))

    # Q(w) = sum_m d_m/m! w^m; powers Q^i'/i'! as {w-degree: y-series}
    def series_const(c):
        return TruncatedSeries([c], I)

    Q = {m: derivs[m] for m in range(2, lmax + 1)}
    q_powers = {0: {0: series_const(one)}}
    imax = lmax // 2
    for ip in range(1, imax + 1):
        prev = q_powers[ip - 1]
        cur: dict = {}
        for a, sa in prev.items():
            for m, sm in Q.items():
                if a + m > lmax:
                    continue
                cur[a + m] = cur.get(a + m, series_const(zero)) + ps_mul(sa, sm)
        q_powers[ip] = {w: ser * Fraction(1, ip) for w, ser in cur.items()}

    p = p_triangle(jmax).p if jmax >= 1 else ()
    c = [[zero for _ in range(J + 1)] for _ in range(I + 1)]
    c[0][0] = c[0][0] + 1
    sigma_pows = [series_const(one)]
    for _ in range(lmax):
        sigma_pows.append(ps_mul(sigma_pows[-1], sigma))
    for j in range(1, jmax + 1):
        for i in range(1, min(j, I) + 1):
            l = j + i
            pji = p[j - 1][i - 1]
            for ip in range(1, l // 2 + 1):
                e = j - ip
                if e < 0 or e > J:
                    continue
                q = q_powers[ip].get(l)
                if q is None:
                    continue
                term = ps_mul(sigma_pows[l], q).shift(i) * ((-1) ** j * pji)
                for a in range(I + 1):
                    if term[a]:
                        c[a][e] = c[a][e] + term[a]
    return RatioSeries(tuple(tuple(row) for row in c))


def correction_series(f: TruncatedSeries | None, order: int) -> tuple:
    """Exact ``y``-series of the two terms of the corrected ratio.

    Returns ``(lead, first)`` with ``lead = (1 + s^2 d_2 / y)^{-1/2}`` and
    ``first = (s/y)^3 A / (1 + s^2 d_2 / y)^{7/2}``, i.e. the predicted
    ``x^0`` and ``x^{-1}`` columns of :func:`ratio_series`.
    """
    if f is None:
        f = symbolic_exponent_series(order + 2, order + 8)
    sigma = saddle_ratio_series(f, order)
    y = TruncatedSeries.z(order)
    s = ps_mul(sigma, y)
    d = {}
    D = f
    for m in range(1, 5):
        D = ps_derive(D)
        d[m] = ps_compose(D, s)
    s2 = ps_mul(s, s)
    s3 = ps_mul(s2, s)
    base = ps_mul(ps_mul(sigma, s), d[2]) + 1
    s3_over_y = ps_mul(ps_mul(sigma, s), s)
    A = (ps_mul(s3_over_y, ps_int_pow(d[2], 3)) * Fraction(1, 12)
         - ps_mul(s, ps_int_pow(d[2], 2)) * Fraction(3, 4)
         - ps_mul(s2, ps_mul(d[2], d[3])) * Fraction(1, 2)
         - ps_mul(s3, ps_int_pow(d[3], 2)) * Fraction(5, 24)
         + ps_mul(y, d[3]) * Fraction(1, 3)
         + ps_mul(s3, ps_mul(d[2], d[4])) * Fraction(1, 8)
         + ps_mul(ps_mul(s, y), d[4]) * Fraction(1, 8))
    lead = ps_pow(base, Fraction(-1, 2))
    first = ps_mul(ps_mul(ps_int_pow(sigma, 3), A), ps_pow(base, Fraction(-7, 2)))
    return lead, first


# the intermediate expansion in n and 1/x, built independently

def _partitions_weighted(k: int, max_part: int | None = None):
    """Tuples ``(k2, k3, ...)`` with ``k2 + 2 k3 + 3 k4 + ... = k``."""
    if max_part is None:
        max_part = k + 1
    out = []

    def rec(idx, remaining, acc):
        # part index idx corresponds to f_{idx}, weight idx - 1
        if remaining == 0:
            out.append(dict(acc))
            return
        if idx > max_part:
            return
        w = idx - 1
        for cnt in range(remaining // w + 1):
            if cnt:
                acc[idx] = cnt
            rec(idx + 1, remaining - cnt * w, acc)
            acc.pop(idx, None)

    rec(2, k, {})
    return out


def _truncate_u(p: MPoly, K: int) -> MPoly:
    return MPoly({m: c for m, c in p.terms.items() if dict(m).get("u", 0) <= K})


def _falling_n(r: int) -> MPoly:
    n = MPoly.var("n")
    acc = MPoly(1)
    for t in range(r):
        acc = acc * (n - t)
    return acc


def subdiagonal_polynomial(k: int, fvals: dict | None = None) -> MPoly:
    """``f_{n(n-k)} = sum n^(k + k2 + k3 + ... falling) prod f_m^{k_m} / (m!^{k_m} k_m!)``."""
    acc = MPoly(0)
    for part in _partitions_weighted(k):
        r = k + sum(part.values())
        term = _falling_n(r)
        for m, cnt in part.items():
            fm = fvals[m] if fvals and m in fvals else MPoly.var(f"f{m}")
            term = term * (fm ** cnt) * Fraction(1, factorial(m) ** cnt * factorial(cnt))
        acc = acc + term
    return acc


def intermediate_expansion(max_j: int, fvals: dict | None = None) -> dict:
    """``a_ij`` with ``F_n(x)/F~_n(x) = sum a_ij n^i x^{-j}`` for ``j <= max_j``.

    Numerator: ``n! F_n(x)/x^n = sum_k f_{n(n-k)} x^{-k}``.  Denominator:
    ``n! F~_n(x)/x^n = exp(n G(y))`` with ``G = sigma F^(y sigma) - 1 - ln sigma``
    and ``sigma = s/y`` obtained here by fixed-point iteration.
    """
    K = max_j
    n, u = MPoly.var("n"), MPoly.var("u")
    if fvals is None:
        fk = {m: MPoly.var(f"f{m}") for m in range(2, K + 2)}
    else:
        fk = {m: MPoly(as_rational(fvals.get(m, 0))) for m in range(2, K + 2)}

    num = MPoly(0)
    for k in range(K + 1):
        num = num + subdiagonal_polynomial(k, fk) * u ** k

    # sigma(y) from s = y - (h(s) - s), h(s) = s f'(s) = sum f_m s^m / (m-1)!
    order = K + 1
    zero = TruncatedSeries([MPoly(0)] * (order + 1))
    yser = TruncatedSeries([MPoly(0), MPoly(1)] + [MPoly(0)] * (order - 1))
    hcoef = [MPoly(0), MPoly(1)] + [fk.get(m, MPoly(0)) * Fraction(1, factorial(m - 1))
                                    for m in range(2, order + 1)]
    s = yser
    for _ in range(order + 1):
        hs = zero
        for m in range(2, order + 1):
            hs = hs + ps_int_pow(s, m) * hcoef[m]
        s = yser - hs
    sigma = s.divide_by_z()  # order K
    # F^(s) = 1 + sum f_m s^{m-1}/m!
    s_trunc = s.truncate(K)
    fhat = TruncatedSeries([MPoly(1)] + [MPoly(0)] * K)
    for m in range(2, K + 2):
        fhat = fhat + ps_int_pow(s_trunc, m - 1) * (fk[m] * Fraction(1, factorial(m)))
    G = ps_mul(sigma, fhat) - 1 - ps_log(sigma)
    # n G(y) with y = n u: sum_m g_m n^{m+1} u^m
    nG = MPoly(0)
    for m in range(1, K + 1):
        nG = nG + G[m] * n ** (m + 1) * u ** m
    den = MPoly(1)
    term = MPoly(1)
    for r in range(1, K + 1):
        term = _truncate_u(term * nG, K) * Fraction(1, r)
        den = den + term
    # 1/den = sum (1 - den)^r
    one_minus = MPoly(1) - den
    inv = MPoly(1)
    power = MPoly(1)
    for _ in range(K):
        power = _truncate_u(power * one_minus, K)
        inv = inv + power
    ratio = _truncate_u(num * inv, K)
    out = {}
    for j in range(K + 1):
        cj = ratio.coefficient("u", j)
        if cj.degree_in("n") > 2 * j:
            raise AssertionError("n-degree exceeds 2j; the expansion is malformed")
        for i in range(2 * j + 1):
            coeff = cj.coefficient("n", i)
            out[(i, j)] = coeff.constant_term() if coeff.is_constant() else coeff
    return out


# associated Stirling numbers p_ji

@dataclass(frozen=True)
class PjiTriangle:
    p: tuple  # p[j-1][i-1] for 1 <= i <= j

    def __getitem__(self, ji):
        j, i = ji
        return self.p[j - 1][i - 1]

    def normalized(self) -> tuple:
        """``j! p_ji / (i+j)!``."""
        return tuple(tuple(Fraction(factorial(j) * v, factorial(i + j))
                           for i, v in enumerate(row, start=1))
                     for j, row in enumerate(self.p, start=1))


def p_triangle(j_max: int) -> PjiTriangle:
    """``p_ji``: permutations of ``i+j`` elements with ``i`` cycles and no fixed points.

    Built by ``d(m, k) = (m-1) (d(m-1, k) + d(m-2, k-1))`` with ``p_ji = d(i+j, i)``.
    """
    size = 2 * j_max
    d = [[0] * (size + 1) for _ in range(size + 1)]
    d[0][0] = 1
    for m in range(1, size + 1):
        for k in range(1, m // 2 + 1):
            d[m][k] = (m - 1) * (d[m - 1][k] + (d[m - 2][k - 1] if m >= 2 else 0))
    return PjiTriangle(tuple(tuple(d[i + j][i] for i in range(1, j + 1))
                             for j in range(1, j_max + 1)))


def p_triangle_from_cycle_numbers(j_max: int) -> PjiTriangle:
    """``p_ji`` as the Newton forward differences of ``k -> [k, k-j]`` (cycle numbers)."""
    size = 2 * j_max
    cycle = triangle_from(TruncatedSeries([0] + [Fraction(1, m) for m in range(1, size + 1)]))

    def g(j, k):
        return cycle[k, k - j] if k - j >= 0 else 0

    rows = []
    for j in range(1, j_max + 1):
        row = []
        for i in range(1, j + 1):
            m = j + i
            row.append(sum((-1) ** (m - r) * comb(m, r) * g(j, r) for r in range(m + 1)))
        rows.append(tuple(int(v) for v in row))
    return PjiTriangle(tuple(rows))
