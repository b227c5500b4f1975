"""Named exponent series ``f(z) = ln F(z)`` and their families."""
from __future__ import annotations

from fractions import Fraction
from math import factorial

from .family import Family, binomial_series, family_from, tree_function
from .series import TruncatedSeries, as_rational, ps_exp, ps_inv, ps_log, ps_mul


def _exp_minus_one(N):
    return TruncatedSeries([0] + [Fraction(1, factorial(n)) for n in range(1, N + 1)])


def _log_geometric(N):
    return TruncatedSeries([0] + [Fraction(1, n) for n in range(1, N + 1)])


def _log_one_plus(N):
    return TruncatedSeries([0] + [Fraction((-1) ** (n - 1), n) for n in range(1, N + 1)])


def _arcsin(N):
    cs = [Fraction(0)] * (N + 1)
    for k in range((N - 1) // 2 + 1):
        cs[2 * k + 1] = Fraction(factorial(2 * k), 4 ** k * factorial(k) ** 2 * (2 * k + 1))
    return TruncatedSeries(cs)


def _two_sinh_half(N):
    return TruncatedSeries([Fraction(2, 2 ** n * factorial(n)) if n % 2 else 0
                            for n in range(N + 1)])


def _stirling_poly(N):
    # z e^z / (e^z - 1) = e^z / ((e^z - 1)/z)
    e = ps_exp(TruncatedSeries.z(N + 1))
    quotient = (e - 1).divide_by_z()
    return ps_log(ps_mul(e.truncate(N), ps_inv(quotient)))


def _lah(N):
    return TruncatedSeries([0] + [1] * N)


def _preferential(N):
    # ln 1/(2 - e^z) = -ln(1 - (e^z - 1))
    return -ps_log(1 - _exp_minus_one(N))


def _signed_subset(N):
    # 1 - e^{-z}
    return TruncatedSeries([0] + [Fraction((-1) ** (n - 1), factorial(n)) for n in range(1, N + 1)])


def _s_step(N, s):
    # ln (1 + s z)^{1/s}; s = 0 is the limit z
    s = as_rational(s)
    return TruncatedSeries([0] + [Fraction((-1) ** (n - 1), n) * s ** (n - 1)
                                  for n in range(1, N + 1)])


_SERIES = {
    "exp": lambda N, **kw: TruncatedSeries.z(N),
    "binomial": lambda N, **kw: _log_one_plus(N),
    "rising": lambda N, **kw: _log_geometric(N),
    "log-geometric": lambda N, **kw: _log_geometric(N),
    "exp-minus-one": lambda N, **kw: _exp_minus_one(N),
    "bell": lambda N, **kw: _exp_minus_one(N),
    "catalan-t": lambda N, t=2, **kw: ps_log(binomial_series(t, N)),
    "s-step": lambda N, s=1, **kw: _s_step(N, s),
    "tree": lambda N, **kw: tree_function(N),
    "tree-poly": lambda N, **kw: -ps_log(1 - tree_function(N)),
    "idempotent": lambda N, **kw: ps_mul(TruncatedSeries.z(N), ps_exp(TruncatedSeries.z(N))),
    "arcsin": lambda N, **kw: _arcsin(N),
    "central-factorial": lambda N, **kw: _two_sinh_half(N),
    "stirling-poly": lambda N, **kw: _stirling_poly(N),
    "lah": lambda N, **kw: _lah(N),
    "preferential": lambda N, **kw: _preferential(N),
    "signed-subset": lambda N, **kw: _signed_subset(N),
}

ALIASES = {
    "stirling2": "exp-minus-one",
    "subset": "exp-minus-one",
    "stirling1": "log-geometric",
    "cycle": "log-geometric",
    "signed-stirling1": "binomial",
    "power": "exp",
}

NAMES = tuple(sorted(_SERIES))


def canonical_name(name: str) -> str:
    name = ALIASES.get(name, name)
    if name not in _SERIES:
        raise KeyError(f"unknown family {name!r}; choose from {', '.join(NAMES)}")
    return name


def catalog_series(name: str, N: int, **params) -> TruncatedSeries:
    """The exponent series ``f(z)`` of a named family, through ``z^N``."""
    return _SERIES[canonical_name(name)](N, **params)


def catalog(name: str, N: int, **params) -> Family:
    """The named convolution family through ``F_N``.

    ``catalan-t`` takes ``t`` (default 2); ``s-step`` takes ``s``, giving the
    family of ``(1 + s z)^{1/s}``.
    """
    key = canonical_name(name)
    return family_from(catalog_series(key, N, **params), N, name=key)
