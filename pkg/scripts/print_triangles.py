"""Print the convolution matrices of the catalog families."""
from __future__ import annotations

import argparse
from dataclasses import dataclass, field

from convpoly.catalog import catalog_series
from convpoly.matrix import triangle_from, triangle_mul
from convpoly.series import format_rational


@dataclass
class TriangleConfig:
    n_max: int = 7
    families: list = field(default_factory=lambda: [
        "exp-minus-one", "log-geometric", "binomial", "signed-subset", "lah", "preferential",
        "catalan-t", "central-factorial", "tree-poly", "idempotent", "arcsin", "stirling-poly"])


def render(T) -> str:
    cells = [[format_rational(c) for c in row] for row in T.rows]
    width = max(len(c) for row in cells for c in row)
    return "\n".join("  ".join(c.rjust(width) for c in row) for row in cells)


def run(cfg: TriangleConfig):
    for name in cfg.families:
        T = triangle_from(catalog_series(name, cfg.n_max))
        print(f"# {name}")
        print(render(T))
        print()
    S2 = triangle_from(catalog_series("exp-minus-one", cfg.n_max))
    S1 = triangle_from(catalog_series("log-geometric", cfg.n_max))
    print("# subset x cycle (preferential arrangements)")
    print(render(triangle_mul(S2, S1)))
    print()
    print("# cycle x subset (Lah)")
    print(render(triangle_mul(S1, S2)))


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("-N", "--n-max", type=int, default=TriangleConfig.n_max)
    parser.add_argument("families", nargs="*")
    args = parser.parse_args()
    cfg = TriangleConfig(n_max=args.n_max)
    if args.families:
        cfg.families = args.families
    run(cfg)
