"""Command-line front end.

Exit status: 0 on success or PASS, 1 when a verification fails, 2 on a
usage error.  Exact numbers are printed as ``p/q``.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
import warnings
from dataclasses import dataclass, field
from fractions import Fraction

from . import checks
from .asymptotics import SaddlePointError, SaddleReport, compare, ratio_series
from .catalog import ALIASES, NAMES, canonical_name, catalog_series
from .family import Family, family_from, tamper
from .matrix import (extended, extended_entry, revert, stirling_polynomial, triangle_from,
                     triangle_mul, triangle_power)
from .series import SeriesError, TruncatedSeries, as_rational, format_rational, ps_compose

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

# the float saddle-point layer evaluates truncated series; this many terms is plenty for y <= 1/2
ASYMP_SERIES_ORDER = 60


class UsageError(Exception):
    pass


@dataclass
class CommandSpec:
    """Resolved family source plus the order it is needed to."""

    command: str
    N: int
    fmt: str = "tsv"
    family_name: str | None = None
    f_list: list = field(default_factory=list)
    params: dict = field(default_factory=dict)

    @property
    def label(self) -> str:
        return self.family_name or "f=" + ",".join(format_rational(c) for c in self.f_list)

    def series(self, order: int | None = None) -> TruncatedSeries:
        order = self.N if order is None else order
        if self.family_name is not None:
            return catalog_series(self.family_name, order, **self.params)
        # explicit exponential coefficients; missing ones are zero
        fj = (self.f_list + [Fraction(0)] * order)[:order]
        return TruncatedSeries.from_exponential([0] + fj, order)

    def family(self) -> Family:
        return family_from(self.series(), self.N, name=self.label)


def _parse_rational_list(text: str) -> list:
    try:
        return [as_rational(part.strip()) for part in text.split(",") if part.strip()]
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"cannot parse number list {text!r}: {exc}") from None


def _parse_rational(text: str) -> Fraction:
    try:
        return as_rational(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"cannot parse number {text!r}: {exc}") from None


def _add_source(p: argparse.ArgumentParser):
    p.add_argument("-N", type=int, default=None, help="order (rows 1..N)")
    p.add_argument("--family", help="catalog name: " + ", ".join(NAMES + tuple(sorted(ALIASES))))
    p.add_argument("--f", dest="f_list", metavar="F1,F2,...",
                   help="exponential coefficients f_1, f_2, ... of f(z)")
    p.add_argument("--t", default=None, help="parameter t for catalan-t")
    p.add_argument("--s", default=None, help="parameter s for s-step")


def _add_common(p: argparse.ArgumentParser):
    p.add_argument("--format", dest="fmt", choices=("tsv", "json"), default="tsv")
    p.add_argument("--seed", type=int, default=0)


def _spec(args, default_N: int | None = None, need_family: bool = True) -> CommandSpec:
    if args.family and args.f_list:
        raise UsageError("give either --family or --f, not both")
    if need_family and not (args.family or args.f_list):
        raise UsageError("a family is required: --family NAME or --f f1,f2,...")
    f_list = _parse_rational_list(args.f_list) if args.f_list else []
    N = args.N
    if N is None:
        N = len(f_list) if f_list else default_N
    if N is None:
        raise UsageError("the order -N is required")
    if N < 1:
        raise UsageError(f"N must be at least 1, got {N}")
    name, params = None, {}
    if args.family:
        try:
            name = canonical_name(args.family)
        except KeyError as exc:
            raise UsageError(exc.args[0]) from None
        if args.t is not None:
            params["t"] = _parse_rational(args.t)
        if args.s is not None:
            params["s"] = _parse_rational(args.s)
    return CommandSpec(args.command, N, args.fmt, name, f_list, params)


def _series_line(g: TruncatedSeries) -> str:
    return "\t".join(format_rational(c) for c in g.coeffs)


def _series_json(g: TruncatedSeries, **extra) -> str:
    data = {"order": g.order, "coeffs": [format_rational(c) for c in g.coeffs]}
    data.update(extra)
    return json.dumps(data)


# subcommands; each returns an exit status

def cmd_triangle(args, out) -> int:
    spec = _spec(args)
    F = triangle_from(spec.series(), spec.N)
    out.write(F.to_json() + "\n" if spec.fmt == "json" else F.to_tsv())
    return EXIT_OK


def cmd_family(args, out) -> int:
    spec = _spec(args)
    fam = spec.family()
    if spec.fmt == "json":
        out.write(fam.to_json() + "\n")
    else:
        # row n: coefficients of F_n(x), constant term first
        for n, p in enumerate(fam.polys):
            coeffs = [p[k] for k in range(n + 1)]
            out.write("\t".join([str(n)] + [format_rational(c) for c in coeffs]) + "\n")
    return EXIT_OK


def cmd_compose(args, out) -> int:
    spec = _spec(args)
    if not (args.outer or args.outer_f):
        raise UsageError("compose needs the outer series: --outer NAME or --outer-f g1,g2,...")
    outer_args = argparse.Namespace(command="compose", N=spec.N, family=args.outer,
                                    f_list=args.outer_f, t=args.t, s=args.s, fmt=spec.fmt)
    outer = _spec(outer_args)
    f, g = spec.series(), outer.series()
    if args.matrix:
        P = triangle_mul(triangle_from(f, spec.N), triangle_from(g, spec.N))
        out.write(P.to_json() + "\n" if spec.fmt == "json" else P.to_tsv())
        return EXIT_OK
    h = ps_compose(g, f)
    out.write(_series_json(h) + "\n" if spec.fmt == "json" else _series_line(h) + "\n")
    return EXIT_OK


def _iterate(f: TruncatedSeries, q: Fraction) -> TruncatedSeries:
    if q == -1:
        return revert(f)
    return triangle_power(triangle_from(f), q).to_series()


def cmd_iterate(args, out) -> int:
    spec = _spec(args)
    q = _parse_rational(args.q)
    f = spec.series()
    if f[1] != 1:
        raise UsageError(f"iteration needs f_1 = 1 (f(z) = z + ...); got f_1 = {format_rational(f[1])}. "
                         "The binomial series for F^q only terminates when F - I is nilpotent.")
    g = _iterate(f, q)
    if spec.fmt == "json":
        out.write(_series_json(g, q=format_rational(q)) + "\n")
    else:
        out.write(_series_line(g) + "\n")
    if not args.check:
        return EXIT_OK
    ok_double = ps_compose(g, g) == _iterate(f, 2 * q)
    ok_inverse = ps_compose(g, _iterate(f, -q)) == TruncatedSeries.z(f.order)
    status = "PASS" if ok_double and ok_inverse else "FAIL"
    out.write(f"{status}\tf^[q] o f^[q] = f^[2q]: {ok_double}\tf^[q] o f^[-q] = z: {ok_inverse}\n")
    return EXIT_OK if status == "PASS" else EXIT_FAIL


def cmd_revert(args, out) -> int:
    spec = _spec(args)
    f = spec.series()
    try:
        g = revert(f)
    except SeriesError as exc:
        raise UsageError(str(exc)) from None
    out.write(_series_json(g) + "\n" if spec.fmt == "json" else _series_line(g) + "\n")
    if args.check:
        ok = ps_compose(g, f) == TruncatedSeries.z(f.order)
        out.write(("PASS" if ok else "FAIL") + "\tg(f(z)) = z\n")
        return EXIT_OK if ok else EXIT_FAIL
    return EXIT_OK


VERIFY_CHECKS = ("convolution", "derived", "t-identities", "rothe", "duality", "inverse", "lah",
                 "weak", "all")
_FAMILY_CHECKS = {"convolution": checks.convolution, "derived": checks.derived,
                  "t-identities": checks.t_identities}


def cmd_verify(args, out) -> int:
    rng = random.Random(args.seed)
    names = VERIFY_CHECKS[:-1] if args.check == "all" else (args.check,)
    needs_family = any(name in _FAMILY_CHECKS for name in names)
    spec = _spec(args, default_N=8, need_family=args.check in _FAMILY_CHECKS) if needs_family else None
    if args.tamper and spec is None:
        raise UsageError("--tamper applies to the family checks only")
    n_max = args.n if args.n is not None else 6
    if n_max < 0:
        raise UsageError("-n must be nonnegative")
    fam = None
    if spec is not None and (spec.family_name or spec.f_list):
        fam = spec.family()
        if args.tamper:
            if fam.order < 2:
                raise UsageError("--tamper needs N >= 2")
            fam = tamper(fam)
    results = []
    for name in names:
        if name in _FAMILY_CHECKS:
            if fam is None:
                continue
            results.append(_FAMILY_CHECKS[name](fam, rng, args.trials))
        elif name == "rothe":
            results.append(checks.rothe(n_max, rng, args.trials))
        elif name == "duality":
            results.append(checks.stirling_duality(n_max))
        elif name == "inverse":
            results.append(checks.stirling_inverse(max(n_max, 1)))
        elif name == "lah":
            results.append(checks.lah_symmetry(n_max))
        elif name == "weak":
            results.append(checks.weak_implies_strong(rng, max(n_max, 1), args.trials))
    if args.fmt == "tsv":
        for r in results:
            out.write(r.summary() + "\n")
    else:
        out.write(json.dumps([{"check": r.name, "passed": r.passed, "instances": r.instances,
                               "failures": len(r.failures)} for r in results]) + "\n")
    return EXIT_OK if results and all(r.passed for r in results) else EXIT_FAIL


def _int_list(values) -> list:
    out = []
    for v in values:
        for part in str(v).split(","):
            if part.strip():
                out.append(int(part))
    return out


def _format_float(v) -> str:
    return f"{float(v):.12g}"


def cmd_asymp(args, out) -> int:
    ns = _int_list(args.n or [])
    xs = [_parse_rational(p) for v in (args.x or []) for p in str(v).split(",") if p.strip()]
    if not ns or not xs:
        raise UsageError("asymp needs -n and -x values")
    if any(n < 1 for n in ns) or any(x <= 0 for x in xs):
        raise UsageError("n must be positive and x must be positive")
    spec = _spec(args, default_N=max(ASYMP_SERIES_ORDER, max(ns)))
    f = spec.series(max(spec.N, max(ns), ASYMP_SERIES_ORDER))
    if f[1] != 1:
        raise UsageError("asymptotics are stated for f_1 = 1")
    series = ratio_series(f, 3, 1)
    rows = []
    for n in ns:
        for x in xs:
            try:
                rows.append(compare(f, n, x, series=series))
            except SaddlePointError as exc:
                raise UsageError(f"n={n}, x={x}: {exc}") from None
    if spec.fmt == "json":
        out.write(json.dumps([r.as_row() for r in rows]) + "\n")
    else:
        out.write("\t".join(SaddleReport.FIELDS) + "\n")
        for r in rows:
            row = r.as_row()
            out.write("\t".join(str(row[k]) if k == "n" else _format_float(row[k])
                                for k in SaddleReport.FIELDS) + "\n")
    return EXIT_OK


def cmd_extend(args, out) -> int:
    spec = _spec(args)
    f = spec.series(2 * spec.N + 2)
    if f[1] != 1:
        raise UsageError("extended entries need f_1 = 1")
    if args.grid is not None:
        m = args.grid
        header = ["n\\k"] + [str(k) for k in range(-m, m + 1)]
        out.write("\t".join(header) + "\n")
        for n in range(-m, m + 1):
            out.write("\t".join([str(n)] + [format_rational(extended(f, n, k))
                                            for k in range(-m, m + 1)]) + "\n")
        return EXIT_OK
    # polynomials f_{y(y-k)} for k = 0..N, coefficients of y^0, y^1, ...
    polys = [extended_entry(f, k).poly for k in range(spec.N + 1)]
    if spec.fmt == "json":
        out.write(json.dumps({"entries": [[format_rational(c) for c in p.coeffs] for p in polys]}) + "\n")
    else:
        for k, p in enumerate(polys):
            out.write("\t".join([str(k)] + [format_rational(c) for c in p.coeffs]) + "\n")
    return EXIT_OK


def cmd_sigma(args, out) -> int:
    N = args.N if args.N is not None else 6
    if N < 1:
        raise UsageError(f"N must be at least 1, got {N}")
    polys = [stirling_polynomial(n) for n in range(1, N + 1)]
    if args.fmt == "json":
        out.write(json.dumps({"sigma": [[format_rational(c) for c in p.coeffs] for p in polys]}) + "\n")
    else:
        for n, p in enumerate(polys, start=1):
            out.write("\t".join([str(n)] + [format_rational(c) for c in p.coeffs]) + "\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="convpoly",
                                     description="Convolution polynomials, their matrices and asymptotics.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_text, with_source=True):
        p = sub.add_parser(name, help=help_text)
        if with_source:
            _add_source(p)
        _add_common(p)
        return p

    add("triangle", "print the convolution matrix rows 1..N")
    add("family", "print F_0(x)..F_N(x)")
    p = add("compose", "g(f(z)) for f from --family/--f and g from --outer/--outer-f")
    p.add_argument("--outer")
    p.add_argument("--outer-f", dest="outer_f")
    p.add_argument("--matrix", action="store_true", help="print the matrix product instead")
    p = add("iterate", "fractional iterate f^[q]")
    p.add_argument("-q", required=True)
    p.add_argument("--check", action="store_true")
    p = add("revert", "compositional inverse by Lagrange's formula")
    p.add_argument("--check", action="store_true")
    p = add("verify", "exact identity checks at random rational points")
    p.add_argument("check", choices=VERIFY_CHECKS)
    p.add_argument("-n", type=int, default=None, help="index range for rothe/duality/lah/inverse/weak")
    p.add_argument("--trials", type=int, default=3)
    p.add_argument("--tamper", action="store_true", help="corrupt one forced coefficient first")
    p = add("asymp", "saddle-point approximation against exact values")
    p.add_argument("-n", action="append")
    p.add_argument("-x", action="append")
    p = add("extend", "extended matrix entries f_{y(y-k)}")
    p.add_argument("--grid", type=int, default=None, help="print entries for n, k in -M..M")
    p = add("sigma", "Stirling polynomials sigma_1..sigma_N", with_source=False)
    p.add_argument("-N", type=int, default=None)
    return parser


COMMANDS = {"triangle": cmd_triangle, "family": cmd_family, "compose": cmd_compose,
            "iterate": cmd_iterate, "revert": cmd_revert, "verify": cmd_verify,
            "asymp": cmd_asymp, "extend": cmd_extend, "sigma": cmd_sigma}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("default")
            return COMMANDS[args.command](args, out)
    except UsageError as exc:
        print(f"convpoly {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
