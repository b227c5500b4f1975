import random
from fractions import Fraction
from math import comb, factorial

import pytest
from hypothesis import given, settings, strategies as st

from convpoly import checks
from convpoly.catalog import catalog, catalog_series
from convpoly.matrix import (ConvolutionTriangle, QMatrix, circ_combine, extended_entry,
                             family_of_triangle, iterate_coefficients, iterate_series,
                             iterates_nonnegative, lagrange_entry, revert, revert_matrix,
                             scale_triangle, stirling_polynomial, triangle_from,
                             triangle_from_exponential, triangle_log, triangle_mul, triangle_of_family,
                             triangle_power, triangle_power_interpolated)
from convpoly.poly import XPolynomial
from convpoly.series import SeriesError, TruncatedSeries, ps_compose

F = Fraction


def rows(T):
    return [list(r) for r in T.rows]


def test_subset_and_cycle_triangles():
    assert rows(triangle_from_exponential([1] * 5)) == [[1], [1, 1], [1, 3, 1], [1, 7, 6, 1],
                                                        [1, 15, 25, 10, 1]]
    cycle = triangle_from_exponential([factorial(j - 1) for j in range(1, 6)])
    assert rows(cycle) == [[1], [1, 1], [2, 3, 1], [6, 11, 6, 1], [24, 50, 35, 10, 1]]


def test_catalan_triangle():
    T = triangle_from(catalog_series("catalan-t", 5))
    assert rows(T) == [[1], [3, 1], [20, 9, 1], [210, 107, 18, 1], [3024, 1650, 335, 30, 1]]
    # f_j = (2j - 1) falling (j - 1)
    falling = [XPolynomial.falling(j - 1)(2 * j - 1) for j in range(1, 6)]
    assert T.first_column() == falling


def test_product_is_composition():
    S2 = triangle_from(catalog_series("exp-minus-one", 5))
    S1 = triangle_from(catalog_series("log-geometric", 5))
    assert rows(triangle_mul(S2, S1)) == [[1], [2, 1], [6, 6, 1], [26, 36, 12, 1],
                                          [150, 250, 120, 20, 1]]
    assert rows(triangle_mul(S1, S2)) == [[1], [2, 1], [6, 6, 1], [24, 36, 12, 1],
                                          [120, 240, 120, 20, 1]]
    assert triangle_mul(S2, ConvolutionTriangle.identity(5)) == S2
    # F G is the matrix of g(f(z))
    f, g = catalog_series("exp-minus-one", 5), catalog_series("log-geometric", 5)
    assert triangle_mul(S2, S1) == triangle_from(ps_compose(g, f))


def test_integer_entries_for_integer_f():
    T = triangle_from_exponential([1, -2, 3, 5, -7, 11, 13])
    assert all(c.denominator == 1 for r in T.rows for c in r)


def test_family_round_trip():
    fam = catalog("tree", 6)
    T = triangle_of_family(fam)
    assert family_of_triangle(T) == fam
    assert T.first_column() == [n ** (n - 1) for n in range(1, 7)]


def test_half_iterates():
    S2 = triangle_from(catalog_series("exp-minus-one", 8))
    half = triangle_power(S2, F(1, 2))
    assert half.first_column()[:5] == [1, F(1, 2), F(1, 8), 0, F(1, 32)]
    assert triangle_mul(half, half) == S2
    S1 = triangle_from(catalog_series("log-geometric", 8))
    half1 = triangle_power(S1, F(1, 2))
    assert half1.first_column()[:5] == [1, F(1, 2), F(5, 8), F(5, 4), F(109, 32)]
    assert triangle_mul(half1, half1) == S1
    assert triangle_power(S2, 2) == triangle_mul(S2, S2)


def test_iterate_series_examples():
    lah = catalog_series("lah", 6)
    half = iterate_series(lah, F(1, 2))
    assert half.coeffs == tuple(F(1, 2 ** (n - 1)) if n else 0 for n in range(7))
    e = iterate_series(catalog_series("exp-minus-one", 6), F(1, 2))
    assert e.coeffs == (0, 1, F(1, 4), F(1, 48), 0, F(1, 3840), F(-7, 92160))


def test_qmatrix_is_polynomial_in_q():
    S2 = triangle_from(catalog_series("exp-minus-one", 6))
    Q = triangle_power(S2)
    assert isinstance(Q, QMatrix)
    assert Q.at(0) == ConvolutionTriangle.identity(6)
    power = ConvolutionTriangle.identity(6)
    for q in range(4):
        assert Q.at(q) == power
        power = triangle_mul(power, S2)
    for n in range(1, 7):
        for k in range(1, n + 1):
            assert Q[n, k].degree <= n - k
    assert Q == triangle_power_interpolated(S2)
    assert Q == triangle_power_interpolated(S2, m=8)


def test_power_requires_unit_diagonal():
    with pytest.raises(SeriesError):
        triangle_power(triangle_from_exponential([2, 1, 1]), F(1, 2))


def test_matrix_log():
    I = ConvolutionTriangle.identity(5)
    assert all(c == 0 for r in triangle_log(I).rows for c in r)
    S1 = triangle_from(catalog_series("log-geometric", 8))
    Q = triangle_power(S1)
    L = triangle_log(S1)
    derivative_at_zero = Q.derivative().at(0)
    assert derivative_at_zero == L
    assert L.first_column()[7] < 0
    assert not iterates_nonnegative(catalog_series("log-geometric", 8))
    assert iterates_nonnegative(catalog_series("lah", 8))


def test_linear_q_coefficient():
    coeffs = iterate_coefficients(catalog_series("log-geometric", 8))
    assert coeffs[8][1] == F(-11, 241920)


def test_revert_examples():
    N = 8
    assert revert(catalog_series("exp-minus-one", N)) == catalog_series("binomial", N)
    z = TruncatedSeries.z(N)
    lah = catalog_series("lah", N)
    assert revert(lah) == TruncatedSeries([0] + [(-1) ** (n - 1) for n in range(1, N + 1)])
    T = catalog_series("tree", N)
    assert revert(T) == TruncatedSeries([0] + [F((-1) ** (n - 1), factorial(n - 1))
                                               for n in range(1, N + 1)])
    with pytest.raises(SeriesError):
        revert(TruncatedSeries([0, 0, 1]))
    scaled = TruncatedSeries([0, 3, 1, 2, 0, 0])
    assert ps_compose(revert(scaled), scaled) == TruncatedSeries.z(5)
    assert ps_compose(revert(lah), lah) == z


def test_revert_matrix():
    F_ = triangle_from(catalog_series("tree", 7))
    G = revert_matrix(F_)
    assert triangle_mul(G, F_) == ConvolutionTriangle.identity(7)
    assert G == triangle_power(F_, -1)


def test_lagrange_entries():
    S2 = catalog_series("exp-minus-one", 6)
    assert lagrange_entry(S2, 4, 2) == 7
    assert lagrange_entry(catalog_series("lah", 6), 4, 2) == 36
    T = triangle_from(S2)
    for n in range(1, 7):
        assert lagrange_entry(S2, n, n) == 1
        for k in range(1, n + 1):
            assert lagrange_entry(S2, n, k) == T[n, k]


def test_extended_entries():
    S2 = catalog_series("exp-minus-one", 10)
    assert extended_entry(S2, 0).poly == XPolynomial([1])
    e1 = extended_entry(S2, 1)
    assert [e1(n) for n in range(2, 6)] == [1, 3, 6, 10]
    T = triangle_from(S2)
    for k in range(4):
        e = extended_entry(S2, k)
        assert e.poly.degree <= 2 * k
        for n in range(k + 1, 9):
            assert e(n) == T[n, n - k]
        if k:
            # divisible by y falling (k + 1)
            assert all(e(j) == 0 for j in range(k + 1))


def test_identity_checks():
    assert checks.stirling_duality(6).passed
    assert checks.stirling_inverse(8).passed
    assert checks.lah_symmetry(6).passed


def test_stirling_polynomials():
    assert stirling_polynomial(1) == XPolynomial([F(1, 2)])
    sigma2 = stirling_polynomial(2)
    assert sigma2(5) * 5 * 4 * 3 == 35
    assert sigma2(1) == F(1, 12)
    with pytest.raises(ValueError):
        stirling_polynomial(0)


def test_scale_triangle():
    S2 = triangle_from(catalog_series("exp-minus-one", 5))
    assert scale_triangle(S2, 1, 1) == S2
    assert scale_triangle(S2, -1, -1) == triangle_from(catalog_series("signed-subset", 5))
    signed = triangle_from(catalog_series("binomial", 4))
    assert rows(signed) == [[1], [-1, 1], [2, -3, 1], [-6, 11, -6, 1]]
    assert scale_triangle(S2, 2, F(1, 2))[4, 2] == S2[4, 2] * 4


def test_central_factorial_recurrence():
    T = triangle_from(catalog_series("central-factorial", 9))
    for n in range(3, 10):
        for k in range(1, n + 1):
            assert T[n, k] == F(k * k, 4) * T[n - 2, k] + T[n - 2, k - 2]


def test_circ_combine():
    S2 = triangle_from(catalog_series("exp-minus-one", 5))
    doubled = circ_combine(S2, S2)
    for n in range(1, 6):
        for k in range(1, n + 1):
            assert doubled[n, k] == S2[n, k] * 2 ** k
    rng = random.Random(4)

    def random_triangle():
        return ConvolutionTriangle([[rng.randint(-3, 3) for _ in range(n)] for n in range(1, 6)])

    E, G, H = random_triangle(), random_triangle(), random_triangle()
    assert circ_combine(circ_combine(E, G), H) == circ_combine(E, circ_combine(G, H))
    identity = ConvolutionTriangle.identity(5)
    direct = ConvolutionTriangle([[sum(comb(n, j) * S2[j, i] * identity[n - j, k - i]
                                       for j in range(n + 1) for i in range(k + 1))
                                   for k in range(1, n + 1)] for n in range(1, 6)])
    assert circ_combine(S2, identity) == direct


def test_triangle_serialization():
    T = triangle_from(catalog_series("central-factorial", 5))
    assert ConvolutionTriangle.from_json(T.to_json()) == T
    assert T.to_tsv().splitlines()[2] == "1/4\t0\t1"


@settings(max_examples=20, deadline=None)
@given(st.lists(st.fractions(min_value=-3, max_value=3, max_denominator=4), min_size=5, max_size=5),
       st.fractions(min_value=-2, max_value=2, max_denominator=3),
       st.fractions(min_value=-2, max_value=2, max_denominator=3))
def test_power_laws(tail, p, q):
    f = TruncatedSeries([0, 1] + tail)
    T = triangle_from(f)
    assert triangle_mul(triangle_power(T, p), triangle_power(T, q)) == triangle_power(T, p + q)
    assert triangle_power(triangle_power(T, p), q) == triangle_power(T, p * q)
    g = revert(f)
    assert ps_compose(g, f) == TruncatedSeries.z(f.order)
    assert ps_compose(f, g) == TruncatedSeries.z(f.order)
