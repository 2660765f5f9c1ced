"""Command-line entry point: ``isolat {analyze,exact,compare,check}``.

Exit codes: 0 success, 1 usage error, 2 invalid generators or input,
3 enumeration budget exceeded, 4 upper-bound chain violated, 5 property
failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

from . import __version__
from .asymptotics import (
    compare_report,
    edge_bound,
    format_real,
    rows_to_csv,
    vertex_hull_volume,
)
from .checks import run_property_suite
from .errors import (
    BudgetExceededError,
    ChainViolationError,
    InfeasibleEnumerationError,
    IsolatError,
)
from .exact import DEFAULT_N_MAX, brute_force_oracle, exact_table
from .lattice import GeneratorSet, validate_generators
from .zonotope import build_zonotope, ehrhart, lattice_points

EXIT_USAGE = 1
EXIT_INVALID = 2
EXIT_BUDGET = 3
EXIT_CHAIN = 4
EXIT_PROPERTY = 5

DEFAULT_OPTIONS = {
    "t_max": 5,
    "n_max": DEFAULT_N_MAX,
    "radius": None,
    "tolerance": [0.85, 1.15],
    "seed": 0,
    "samples": 500,
    "format": None,
}


@dataclass
class ProblemSpec:
    dim: int
    generators: list[list[int]]
    options: dict[str, Any] = field(default_factory=dict)

    def option(self, name: str):
        return self.options.get(name, DEFAULT_OPTIONS[name])


class InputError(IsolatError, ValueError):
    code = "InvalidInput"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def load_spec(path: str | None) -> ProblemSpec:
    try:
        if path is None or path == "-":
            doc = json.load(sys.stdin)
        else:
            with open(path, encoding="utf-8") as fh:
                doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read problem spec: {exc}") from exc
    if not isinstance(doc, dict) or "dim" not in doc or "generators" not in doc:
        raise InputError('problem spec must be an object with "dim" and "generators"')
    options = doc.get("options") or {}
    unknown = set(options) - set(DEFAULT_OPTIONS)
    if unknown:
        raise InputError(f"unknown options: {sorted(unknown)}")
    return ProblemSpec(int(doc["dim"]), [list(v) for v in doc["generators"]], dict(options))


def _dumps(doc: dict) -> str:
    # one top-level key per line, values compact
    body = ",\n".join(f"  {json.dumps(k)}: {json.dumps(v)}" for k, v in doc.items())
    return "{\n" + body + "\n}\n"


def _fraction_json(x: Fraction):
    return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def cmd_analyze(spec: ProblemSpec, U: GeneratorSet) -> dict:
    Z = build_zonotope(U)
    poly = ehrhart(Z)
    t_max = spec.option("t_max")
    return {
        "dim": U.dim,
        "generators": [list(u) for u in U.generators],
        "volume": _fraction_json(Z.volume),
        "facet_count": 2 * len(Z.facets),
        "facets": [
            {"normal": list(f.normal), "upper": f.upper, "lower": f.lower} for f in Z.facets
        ],
        "ehrhart": [_fraction_json(c) for c in poly.coefficients],
        "ehrhart_str": str(poly),
        "lattice_counts": {str(t): len(lattice_points(Z, t)) for t in range(t_max + 1)},
        "vertex_hull_volume": _fraction_json(vertex_hull_volume(U)),
    }


def cmd_exact(spec: ProblemSpec, U: GeneratorSet):
    return exact_table(U, spec.option("n_max"))


def oracle_mismatches(spec: ProblemSpec, U: GeneratorSet, table) -> list[dict]:
    """Sizes where the branch-and-bound oracle disagrees with the table."""
    out = []
    for n in table.sizes():
        value = brute_force_oracle(U, n, spec.option("radius"))
        if value != table.optimum(n):
            out.append({"n": n, "table": table.optimum(n), "oracle": value})
    return out


def cmd_compare(spec: ProblemSpec, U: GeneratorSet):
    return compare_report(U, spec.option("t_max"))


def cmd_check(spec: ProblemSpec, U: GeneratorSet, **kwargs):
    return run_property_suite(
        U,
        seed=spec.option("seed"),
        samples=spec.option("samples"),
        t_max=min(spec.option("t_max"), 3),
        **kwargs,
    )


def _emit(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _error(exc: IsolatError, code: int) -> int:
    doc = {"error": exc.code, "message": str(exc), "exit_code": code}
    sys.stderr.write(json.dumps(doc) + "\n")
    return code


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", "-i", help="problem spec JSON (default: stdin)")
    common.add_argument("--output", "-o", help="output file (default: stdout)")
    common.add_argument("--t-max", type=int, dest="t_max")
    common.add_argument("--n-max", type=int, dest="n_max")
    common.add_argument("--seed", type=int)
    common.add_argument("--samples", type=int, help="random sets per property (check)")
    common.add_argument("--format", choices=["json", "csv"])
    common.add_argument("--oracle", action="store_true",
                        help="exact: cross-check every entry with the brute-force oracle")
    common.add_argument("--plot-data", dest="plot_data", metavar="FILE",
                        help="also write (n, value, bound) CSV triples for plotting")

    parser = _Parser(prog="isolat", description="Edge isoperimetry on Cayley graphs of Z^d.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("analyze", parents=[common], help="zonotope volume, facets, Ehrhart polynomial")
    sub.add_parser("exact", parents=[common], help="exact ∂*(n) table for n <= n_max")
    sub.add_parser("compare", parents=[common], help="∂(Z(t)) against the asymptotic bound")
    sub.add_parser("check", parents=[common], help="seeded property suite")
    return parser


def _apply_flags(spec: ProblemSpec, args) -> None:
    for name in ("t_max", "n_max", "seed", "samples", "format"):
        val = getattr(args, name)
        if val is not None:
            spec.options[name] = val


def _plot_csv(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        spec = load_spec(args.input)
        _apply_flags(spec, args)
        U = validate_generators(spec.dim, spec.generators)
    except IsolatError as exc:
        return _error(exc, EXIT_INVALID)
    except (TypeError, ValueError) as exc:
        return _error(InputError(str(exc)), EXIT_INVALID)

    fmt = spec.option("format")
    try:
        if args.command == "analyze":
            report = cmd_analyze(spec, U)
            _emit(_dumps(report), args.output)
        elif args.command == "exact":
            table = cmd_exact(spec, U)
            if fmt == "csv":
                text = _plot_csv(["n", "optimum"], [[n, table.optimum(n)] for n in table.sizes()])
            else:
                text = table.dumps()
            _emit(text, args.output)
            if args.plot_data:
                Z = build_zonotope(U)
                rows = [[n, table.optimum(n), format_real(edge_bound(U, n, Z))] for n in table.sizes()]
                _emit(_plot_csv(["n", "optimum", "bound"], rows), args.plot_data)
            if args.oracle:
                bad = oracle_mismatches(spec, U, table)
                if bad:
                    sys.stderr.write(f"oracle mismatch: {json.dumps(bad)}\n")
                    return EXIT_PROPERTY
                sys.stderr.write(f"oracle agrees for n = 1..{max(table.sizes())}\n")
        elif args.command == "compare":
            rows = cmd_compare(spec, U)
            if fmt == "json":
                text = json.dumps([
                    {"t": r.t, "n": r.n, "edge_boundary": r.edge_boundary, "telescoped": r.telescoped,
                     "bound": format_real(r.bound), "ratio": format_real(r.ratio)}
                    for r in rows
                ], indent=2) + "\n"
            else:
                text = rows_to_csv(rows)
            _emit(text, args.output)
            if args.plot_data:
                _emit(_plot_csv(["n", "edge_boundary", "bound"],
                                [[r.n, r.edge_boundary, format_real(r.bound)] for r in rows]),
                      args.plot_data)
            lo, hi = spec.option("tolerance")
            final = rows[-1].ratio
            inside = lo <= float(final) <= hi
            sys.stderr.write(f"final ratio {format_real(final)} "
                             f"{'within' if inside else 'outside'} [{lo}, {hi}]\n")
        elif args.command == "check":
            results = cmd_check(spec, U)
            lines = [r.line() for r in results]
            _emit("\n".join(lines) + "\n", args.output)
            failed = [r for r in results if not r.ok]
            if failed:
                for r in failed:
                    sys.stderr.write(f"property {r.name} failed; reproducer {r.reproducer}\n")
                return EXIT_PROPERTY
    except (BudgetExceededError, InfeasibleEnumerationError) as exc:
        return _error(exc, EXIT_BUDGET)
    except ChainViolationError as exc:
        return _error(exc, EXIT_CHAIN)
    return 0


if __name__ == "__main__":
    sys.exit(main())
