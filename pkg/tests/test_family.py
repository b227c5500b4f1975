import math
import random
from fractions import Fraction
from math import comb, factorial

import pytest
from hypothesis import given, settings, strategies as st

from convpoly import checks
from convpoly.catalog import NAMES, catalog, catalog_series, canonical_name
from convpoly.family import (Family, binomial_family_coefficient, binomial_series, check_convolution,
                             check_derived_convolution, check_t_identities, combine, family_from,
                             family_from_weak_condition, idempotent_polynomials, rothe_residual,
                             scale_family, t_shift, t_shift_series, tamper, tree_function,
                             tree_polynomials, umbral_substitute)
from convpoly.poly import XPolynomial
from convpoly.series import TruncatedSeries, ps_log

from .oracles import idempotent_maps_by_fixed_points, self_maps_by_cycles

F = Fraction
x = XPolynomial.x()


def test_power_family():
    fam = family_from(TruncatedSeries.z(5))
    for n in range(6):
        assert fam[n] == x ** n * F(1, factorial(n))


def test_binomial_family():
    fam = catalog("binomial", 5)
    assert fam[2] == (x ** 2 - x) * F(1, 2)
    for n in range(6):
        assert fam[n] == XPolynomial.binomial(n)


def test_tree_family_closed_form():
    fam = catalog("tree", 7)
    assert fam[3] == (9 * x + 6 * x ** 2 + x ** 3) * F(1, 6)
    for n in range(1, 8):
        assert fam[n] == x * (x + n) ** (n - 1) * F(1, factorial(n))


def test_residual_examples():
    assert check_convolution(catalog("tree", 4), 0, 3, 5) == 0
    assert check_convolution(catalog("binomial", 3), 3, 5, 7) == 0
    assert check_convolution(catalog("tree", 4), 4, F(1, 2), F(-3, 7)) == 0
    assert check_derived_convolution(catalog("catalan-t", 3), 0, 2, 3) == 0
    assert check_derived_convolution(catalog("catalan-t", 3, t=2), 3, 2, 3) == 0
    assert check_derived_convolution(catalog("exp", 5), 5, 1, 1) == 0


def test_binomial_series_examples():
    assert binomial_series(0, 5).coeffs == (1, 1, 0, 0, 0, 0)
    assert binomial_series(2, 5).coeffs == (1, 1, 2, 5, 14, 42)
    assert binomial_series(-1, 5).coeffs == (1, 1, -1, 2, -5, 14)
    assert binomial_series(1, 5).coeffs == (1,) * 6


def test_binomial_family_coefficient_examples():
    for n in range(6):
        assert binomial_family_coefficient(0, F(7, 3), n) == XPolynomial.binomial(n)(F(7, 3))
    assert binomial_family_coefficient(1, 1, 3) == 1
    assert binomial_family_coefficient(2, 1, 4) == 14
    # x + tn = 0 is a removable pole; the product form stays finite
    assert binomial_family_coefficient(1, -3, 3) == F(-3 * -1 * -2, 6)


def test_binomial_family_matches_series_powers():
    for t in (F(2), F(-1), F(1, 2)):
        fam = catalog("catalan-t", 6, t=t)
        for n in range(7):
            for xv in (F(1), F(5, 2), F(-3)):
                assert fam(n, xv) == binomial_family_coefficient(t, xv, n)


def test_b2_trigonometric_values():
    # B_2((sin(theta)/2)^2) = sec^2(theta/2); Catalan numbers are at most 4^n, so the
    # tail after z^N is bounded by (4w)^(N+1) / (1 - 4w)
    N = 60
    b2 = [float(c) for c in binomial_series(2, N).coeffs]
    for theta in (0.3, 1.1):
        w = (math.sin(theta) / 2) ** 2
        partial = sum(c * w ** n for n, c in enumerate(b2))
        tail = (4 * w) ** (N + 1) / (1 - 4 * w)
        target = 1 / math.cos(theta / 2) ** 2
        assert partial <= target + 1e-12
        assert target - partial <= tail + 1e-12
    for p in (0.3, 0.9):
        w = p * (1 - p)
        partial = sum(c * w ** n for n, c in enumerate(b2))
        tail = (4 * w) ** (N + 1) / (1 - 4 * w)
        assert abs(partial * max(p, 1 - p) - 1) <= tail + 1e-12


def test_b2_at_the_boundary():
    # p = q = 1/2 sits on the circle of convergence: C_n / 4^n <= 1/(sqrt(pi) n^(3/2)),
    # so the tail after z^N is at most 2 / sqrt(pi N)
    N = 60
    b2 = binomial_series(2, N)
    partial = sum(c / F(4) ** n for n, c in enumerate(b2.coeffs))
    bound = 2 / math.sqrt(math.pi * N)
    assert float(partial) <= 2
    assert 2 - float(partial) <= bound


def test_tree_function_and_polynomials():
    T = tree_function(6)
    assert T[1] == 1 and T[5] == F(125, 24)
    tp = tree_polynomials(8)
    rows = [[c for c in tp.row(n)] for n in range(1, 9)]
    assert rows[2] == [17, 9, 1]
    assert [sum(r) for r in rows] == [n ** n for n in range(1, 9)]


def test_self_map_enumeration():
    assert self_maps_by_cycles(3) == [17, 9, 1]
    assert tree_polynomials(4).row(4) == self_maps_by_cycles(4)
    assert idempotent_maps_by_fixed_points(3) == [3, 6, 1]
    idem = idempotent_polynomials(4)
    assert idem[1] == x
    assert idem.row(3) == [3, 6, 1]
    assert idem.row(4)[1] == comb(4, 2) * 2 ** 2
    assert idem.row(4) == idempotent_maps_by_fixed_points(4)


def test_catalog_examples():
    bell = catalog("bell", 5)
    assert [bell(n, 1) * factorial(n) for n in range(6)] == [1, 1, 2, 5, 15, 52]
    arcsin = catalog("arcsin", 8)
    assert arcsin[4] * 24 == x ** 2 * (x ** 2 + 4)
    for n in range(1, 9):
        if n % 2:
            closed = x
            for j in range(1, n - 1, 2):
                closed = closed * (x ** 2 + j * j)
        else:
            closed = x ** 2
            for j in range(2, n - 1, 2):
                closed = closed * (x ** 2 + j * j)
        assert arcsin[n] * factorial(n) == closed
    cf = catalog("central-factorial", 7)
    assert cf.row(7) == [F(1, 64), 0, F(91, 16), 0, F(35, 4), 0, 1]


def test_catalog_names():
    assert canonical_name("stirling2") == "exp-minus-one"
    with pytest.raises(KeyError):
        canonical_name("no-such-family")


@pytest.mark.parametrize("name", NAMES)
def test_every_catalog_family_convolves(name):
    rng = random.Random(hash(name) % 1000)
    fam = catalog(name, 6)
    assert fam[0] == XPolynomial([1])
    for n in range(1, 7):
        assert fam[n](0) == 0 and fam[n].degree <= n
    assert checks.convolution(fam, rng, 2).passed
    assert checks.derived(fam, rng, 2).passed
    assert checks.t_identities(fam, rng, 1).passed


def test_weak_condition_gives_full_family():
    assert checks.weak_implies_strong(random.Random(3), n_max=5, trials=3).passed


def test_rothe():
    assert checks.rothe(8, random.Random(11), 3).passed
    assert rothe_residual(F(1, 3), F(-2, 5), F(7, 2), 5) == 0


def test_umbral_substitution():
    tree = catalog("tree", 6)
    binom = catalog("binomial", 6)
    falling = umbral_substitute(tree, binom)
    assert checks.convolution(falling, random.Random(1), 2).passed
    rising = catalog("rising", 6)
    tp = umbral_substitute(tree, rising)
    assert tp == tree_polynomials(6)
    assert umbral_substitute(tree, catalog("exp", 6)) == tree


def test_t_shift():
    binom = catalog("binomial", 6)
    assert t_shift(binom, 1) == catalog("rising", 6)
    assert t_shift(binom, 0) == binom
    for t in (F(2), F(-1, 3)):
        shifted = t_shift(binom, t)
        expected = family_from(ps_log(binomial_series(t, 6)), 6)
        assert shifted == expected
        assert t_shift(shifted, t) == t_shift(binom, 2 * t)
    one_plus = TruncatedSeries([1, 1, 0, 0, 0, 0, 0])
    assert t_shift_series(one_plus, 2) == binomial_series(2, 6)


def test_combine():
    N = 6
    binom = catalog("binomial", N)
    trivial = Family([XPolynomial([1])] + [XPolynomial()] * N)
    assert combine(binom, trivial) == binom
    doubled = combine(binom, binom)
    assert all(doubled[n] == XPolynomial.binomial(n).scale(2) for n in range(N + 1))
    h = combine(binom, binom, t=1)
    assert h(2, 1) == 2
    assert checks.convolution(h, random.Random(5), 2).passed


def test_scale_family():
    # alpha^n F_n(beta x) is the family of exp(beta x f(alpha z))
    f = catalog_series("exp-minus-one", 5)
    expected = family_from(TruncatedSeries([c * 3 * 2 ** n for n, c in enumerate(f.coeffs)]))
    assert scale_family(catalog("exp-minus-one", 5), 2, 3) == expected


def test_tamper_breaks_the_condition():
    fam = tamper(catalog("tree", 4))
    assert not checks.convolution(fam, random.Random(0), 3).passed


def test_json_round_trip():
    fam = catalog("catalan-t", 5)
    back = Family.from_json(fam.to_json())
    assert back == fam and back.name == "catalan-t"


@settings(max_examples=25, deadline=None)
@given(st.lists(st.fractions(min_value=-4, max_value=4, max_denominator=5), min_size=5, max_size=5),
       st.fractions(min_value=-9, max_value=9, max_denominator=7),
       st.fractions(min_value=-9, max_value=9, max_denominator=7),
       st.fractions(min_value=-3, max_value=3, max_denominator=4))
def test_random_families_satisfy_all_identities(fj, xv, yv, t):
    f = TruncatedSeries.from_exponential([0] + fj)
    fam = family_from(f)
    for n in range(6):
        assert check_convolution(fam, n, xv, yv) == 0
        assert check_derived_convolution(fam, n, xv, yv) == 0
        assert check_t_identities(fam, n, xv, yv, t) == (0, 0)
    assert family_from_weak_condition(fj) == fam
