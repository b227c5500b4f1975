"""Randomized exact identity checks.

Each check returns a :class:`CheckResult`; a check passes only when every
residual is exactly zero.  Random points are rationals drawn from a
seeded ``random.Random``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .catalog import catalog_series
from .family import (Family, check_convolution, check_derived_convolution, check_t_identities,
                     family_from, family_from_weak_condition, rothe_residual)
from .matrix import extended, triangle_from
from .series import TruncatedSeries


@dataclass
class CheckResult:
    name: str
    instances: int = 0
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.instances > 0 and not self.failures

    def record(self, label, residual):
        self.instances += 1
        if residual != 0:
            self.failures.append((label, residual))

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        text = f"{status}\t{self.name}\t{self.instances} instances"
        if self.failures:
            label, residual = self.failures[0]
            text += f"\tfirst failure {label}: residual {residual}"
        return text


def random_rational(rng: random.Random, num: int = 40, den: int = 12) -> Fraction:
    return Fraction(rng.randint(-num, num), rng.randint(1, den))


def convolution(fam: Family, rng: random.Random, trials: int = 3) -> CheckResult:
    res = CheckResult(f"convolution[{fam.name or 'family'}]")
    for n in range(fam.order + 1):
        for _ in range(trials):
            x, y = random_rational(rng), random_rational(rng)
            res.record((n, x, y), check_convolution(fam, n, x, y))
    return res


def derived(fam: Family, rng: random.Random, trials: int = 3) -> CheckResult:
    res = CheckResult(f"derived-convolution[{fam.name or 'family'}]")
    for n in range(fam.order + 1):
        for _ in range(trials):
            x, y = random_rational(rng), random_rational(rng)
            res.record((n, x, y), check_derived_convolution(fam, n, x, y))
    return res


def t_identities(fam: Family, rng: random.Random, trials: int = 2) -> CheckResult:
    res = CheckResult(f"t-identities[{fam.name or 'family'}]")
    for n in range(fam.order + 1):
        for _ in range(trials):
            x, y, t = random_rational(rng), random_rational(rng), random_rational(rng, 10, 5)
            r1, r2 = check_t_identities(fam, n, x, y, t)
            res.record((n, x, y, t, "first"), r1)
            res.record((n, x, y, t, "second"), r2)
    return res


def rothe(n_max: int, rng: random.Random, trials: int = 4) -> CheckResult:
    res = CheckResult("rothe")
    for n in range(n_max + 1):
        for _ in range(trials):
            x, y, t = random_rational(rng), random_rational(rng), random_rational(rng, 10, 5)
            res.record((n, x, y, t), rothe_residual(x, y, t, n))
    return res


def weak_implies_strong(rng: random.Random, n_max: int = 6, trials: int = 4) -> CheckResult:
    """Families solved from ``F_n(2x) = sum F_k(x) F_{n-k}(x)`` alone satisfy the full condition."""
    res = CheckResult("weak-implies-strong")
    for _ in range(trials):
        column = [random_rational(rng, 9, 4) for _ in range(n_max)]
        fam = family_from_weak_condition(column)
        for n in range(n_max + 1):
            x, y = random_rational(rng), random_rational(rng)
            res.record((column, n, x, y), check_convolution(fam, n, x, y))
        expected = family_from(TruncatedSeries.from_exponential([0] + column), n_max)
        res.record((column, "matches exp(x f)"), 0 if fam == expected else 1)
    return res


def stirling_duality(n_max: int = 6) -> CheckResult:
    """``{n brace k} = {-k brack -n}`` and ``f_nk = (-1)^{n-k} g_{(-k)(-n)}`` for ``g(f(z)) = z``."""
    res = CheckResult("stirling-duality")
    N = 2 * n_max + 2
    subset = catalog_series("exp-minus-one", N)
    cycle = catalog_series("log-geometric", N)
    signed_cycle = catalog_series("binomial", N)
    S2 = triangle_from(subset, n_max)
    for n in range(n_max + 1):
        for k in range(n_max + 1):
            brace = S2[n, k]
            res.record(("unsigned", n, k), brace - extended(cycle, -k, -n))
            res.record(("signed", n, k),
                       brace - (-1) ** (n - k) * extended(signed_cycle, -k, -n))
            # and the mirror statement with the roles swapped
            res.record(("mirror", n, k),
                       triangle_from(cycle, n_max)[n, k] - extended(subset, -k, -n))
    return res


def stirling_inverse(n_max: int = 8) -> CheckResult:
    """``sum_k {n brace k}{k brack m}(-1)^{n-k} = delta_mn`` (and the other order)."""
    res = CheckResult("stirling-inverse")
    S2 = triangle_from(catalog_series("exp-minus-one", n_max))
    S1 = triangle_from(catalog_series("log-geometric", n_max))
    for n in range(n_max + 1):
        for m in range(n_max + 1):
            delta = int(m == n)
            a = sum(S2[n, k] * S1[k, m] * (-1) ** (n - k) for k in range(n + 1))
            b = sum(S1[n, k] * S2[k, m] * (-1) ** (n - k) for k in range(n + 1))
            res.record(("brace.brack", n, m), a - delta)
            res.record(("brack.brace", n, m), b - delta)
    return res


def lah_symmetry(n_max: int = 6) -> CheckResult:
    """``L(n, k) = L(-k, -n)`` on the extended Lah matrix, over ``-n_max..n_max``."""
    res = CheckResult("lah-symmetry")
    lah = catalog_series("lah", 2 * n_max + 2)
    for n in range(-n_max, n_max + 1):
        for k in range(-n_max, n_max + 1):
            res.record((n, k), extended(lah, n, k) - extended(lah, -k, -n))
    return res
