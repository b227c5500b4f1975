"""Saddle-point approximation against exact values.

For each family and each fixed y = n/x this prints the relative error of
the plain approximation and of the corrected one as x doubles, plus the
ratio of successive corrected errors (about 4 when the correction removes
the whole 1/x term).
"""
from __future__ import annotations

import argparse
import math
from dataclasses import dataclass, field

from convpoly.asymptotics import approx, corrected_approx, exact_value
from convpoly.catalog import catalog_series


@dataclass
class AsymptoticConfig:
    families: list = field(default_factory=lambda: ["binomial", "tree", "rising", "exp-minus-one",
                                                     "catalan-t"])
    ys: list = field(default_factory=lambda: [1 / 16, 1 / 8, 1 / 4])
    xs: list = field(default_factory=lambda: [64, 128, 256, 512])


def run(cfg: AsymptoticConfig):
    print("family\ty\tx\tn\tapprox_err\tcorrected_err\tslope_factor")
    order = int(max(cfg.xs) * max(cfg.ys)) + 10
    for name in cfg.families:
        f = catalog_series(name, max(order, 40))
        for y in cfg.ys:
            previous = None
            for x in cfg.xs:
                n = round(x * y)
                exact = float(exact_value(f, n, x))
                e_plain = abs(approx(f, n, x) / exact - 1)
                e_corr = abs(corrected_approx(f, n, x) / exact - 1)
                factor = previous / e_corr if previous and e_corr > 0 else math.nan
                print(f"{name}\t{y:g}\t{x}\t{n}\t{e_plain:.3e}\t{e_corr:.3e}\t{factor:.3f}")
                previous = e_corr


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("families", nargs="*")
    args = parser.parse_args()
    cfg = AsymptoticConfig()
    if args.families:
        cfg.families = args.families
    run(cfg)
