"""Fractional iterates of catalog series and the sign test on ln F.

For each family with f'(0) = 1 this prints the half-iterate, the
polynomial-in-q coefficients of f^[q], and whether the first column of
ln F is nonnegative through the chosen order.
"""
from __future__ import annotations

import argparse
from dataclasses import dataclass, field
from fractions import Fraction

from convpoly.catalog import catalog_series
from convpoly.matrix import (iterate_coefficients, iterate_series, iterates_nonnegative,
                             triangle_from, triangle_log)
from convpoly.series import format_rational


@dataclass
class IterateConfig:
    N: int = 8
    q: Fraction = Fraction(1, 2)
    families: list = field(default_factory=lambda: [
        "exp-minus-one", "log-geometric", "lah", "tree", "catalan-t", "preferential", "arcsin"])


def run(cfg: IterateConfig):
    for name in cfg.families:
        f = catalog_series(name, cfg.N)
        if f[1] != 1:
            print(f"# {name}: skipped, f'(0) != 1")
            continue
        g = iterate_series(f, cfg.q)
        log_column = triangle_log(triangle_from(f)).first_column()
        print(f"# {name}")
        print(f"f^[{cfg.q}]      " + " ".join(format_rational(c) for c in g.coeffs))
        print("ln F column  " + " ".join(format_rational(c) for c in log_column))
        print(f"nonnegative for q >= 0 through z^{cfg.N}: {iterates_nonnegative(f)}")
        for n, p in enumerate(iterate_coefficients(f)[2:5], start=2):
            print(f"[z^{n}] f^[q] = {p}")
        print()


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("-N", type=int, default=IterateConfig.N)
    parser.add_argument("-q", default="1/2")
    parser.add_argument("families", nargs="*")
    args = parser.parse_args()
    cfg = IterateConfig(N=args.N, q=Fraction(args.q))
    if args.families:
        cfg.families = args.families
    run(cfg)
