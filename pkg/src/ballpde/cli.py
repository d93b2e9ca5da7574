"""Command line front end: generate bases, run checks, emit tables.

Subcommands
    basis       construct one family and print it
    eigencheck  verify the eigen-equation over a degree range
    orthocheck  verify orthogonality claims over a degree range
    dimtable    tabulate dimensions and singular degrees
    coeffs      print the shell correction coefficient triangle

Exit codes (stable contract for CI):
    0  all requested checks passed
    1  a mathematical check failed
    2  construction hit a singular coefficient
    3  invalid arguments

Output is byte-deterministic for fixed inputs: fixed monomial order, fixed
elimination pivoting, rationals always rendered as "num/den".
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from .bases import (
    SingularCoefficientError,
    family_by_kind,
    harmonic_dim,
    homogeneous_dim,
    shell_coefficient,
    singularity_report,
)
from .quadsym import (
    InnerProductSpec,
    format_rational,
    gram_matrix,
    gram_to_strings,
    star_matching_weight,
)
from .polyalg import Polynomial, exponents_up_to_degree
from .spectral import check_eigen, check_orthogonality, natural_mu

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_SINGULAR = 2
EXIT_USAGE = 3

FAMILIES = ("wmu", "wminus1", "vdelta", "vminus2", "u")
IP_KINDS = ("classical", "grad", "bilap", "delta", "star")


class _Parser(argparse.ArgumentParser):
    """argparse variant honoring the exit-code contract for bad usage."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", newline="") as handle:
            handle.write(text)


def _json_text(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _csv_text(rows) -> str:
    buffer = io.StringIO()
    csv.writer(buffer).writerows(rows)
    return buffer.getvalue()


def _family_json(family) -> dict:
    return {
        "kind": family.kind,
        "d": family.dimension,
        "n": family.degree,
        "params": family.params,
        "shells": family.shells,
        "elements": [
            {"label": {"j": e.shell, "nu": e.index}, "poly": str(e.poly)}
            for e in family.elements
        ],
    }


def _singular_json(err: SingularCoefficientError) -> dict:
    return {
        "error": "singular_coefficient",
        "n": err.n,
        "j": err.j,
        "nu": err.nu,
        "k": err.k,
        "d": err.d,
        "vanishing_factor": f"n - j - k + {err.factor_index} + d/2 = 0",
    }


def _build_family(args, n: int):
    return family_by_kind(
        args.family,
        args.d,
        n,
        mu=int(args.mu) if args.mu is not None else None,
        k=args.k,
    )


def _degree_range(args, parser: _Parser) -> range:
    if args.n is not None:
        return range(args.n, args.n + 1)
    n_min = args.n_min if args.n_min is not None else 0
    if args.n_max is None:
        parser.error("provide --n or --n-max")
    if n_min > args.n_max:
        parser.error("--n-min exceeds --n-max")
    return range(n_min, args.n_max + 1)


def _require_family_params(args, parser: _Parser) -> None:
    if args.family == "wmu":
        if args.mu is None:
            parser.error("family 'wmu' requires --mu")
        if args.mu != int(args.mu) or args.mu < 0:
            parser.error("family 'wmu' requires integer --mu >= 0")
    if args.family == "u":
        if args.k is None:
            parser.error("family 'u' requires --k")
        if args.k < 2:
            parser.error("family 'u' requires --k >= 2")


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_basis(args, parser: _Parser) -> int:
    _require_family_params(args, parser)
    try:
        family = _build_family(args, args.n)
    except SingularCoefficientError as err:
        _emit(_json_text(_singular_json(err)), args.out)
        return EXIT_SINGULAR
    if args.format == "json":
        _emit(_json_text(_family_json(family)), args.out)
    else:
        lines = [family.describe()]
        lines += [f"{e.label} {e.poly}" for e in family.elements]
        _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_eigencheck(args, parser: _Parser) -> int:
    _require_family_params(args, parser)
    if args.family not in ("wmu", "wminus1", "u"):
        parser.error(f"family {args.family!r} carries no eigen-equation claim")
    degrees = _degree_range(args, parser)
    results = []
    any_fail = False
    any_singular = False
    for n in degrees:
        try:
            family = _build_family(args, n)
        except SingularCoefficientError as err:
            any_singular = True
            results.append({"n": n, "singular": _singular_json(err)})
            continue
        report = check_eigen(family, natural_mu(family))
        if not report.passed:
            any_fail = True
        results.append({"n": n, **report.to_json_dict()})
    payload = {
        "claim": "eigenfunction residuals vanish over the degree range",
        "parameters": _parameters(args, degrees),
        "pass": not any_fail and not any_singular,
        "witnesses": results,
    }
    _emit_report(payload, results, args)
    if any_singular:
        return EXIT_SINGULAR
    return EXIT_CHECK_FAILED if any_fail else EXIT_OK


def _inner_product_for(args, n: int, parser: _Parser) -> InnerProductSpec:
    lam = args.lam if args.lam is not None else Fraction(1)
    if args.ip == "classical":
        if args.mu is None:
            parser.error("--ip classical requires --mu")
        return InnerProductSpec.classical(int(args.mu))
    if args.ip == "grad":
        return InnerProductSpec.grad(lam)
    if args.ip == "bilap":
        return InnerProductSpec.bilap(lam)
    if args.ip == "delta":
        return InnerProductSpec.delta_form()
    if args.mu is not None:
        mu = args.mu
    else:
        # the boundary weight that balances the degree-n form
        try:
            mu = star_matching_weight(args.d, n)
        except ValueError as err:
            parser.error(f"{err}; pass --mu explicitly")
    return InnerProductSpec.star(lam, mu, n)


def cmd_orthocheck(args, parser: _Parser) -> int:
    _require_family_params(args, parser)
    degrees = _degree_range(args, parser)
    if args.format == "csv" and len(degrees) != 1:
        parser.error("--format csv needs a single degree (--n)")
    results = []
    any_fail = False
    any_singular = False
    gram_rows: list[list[str]] | None = None
    for n in degrees:
        try:
            family = _build_family(args, n)
        except SingularCoefficientError as err:
            any_singular = True
            results.append({"n": n, "singular": _singular_json(err)})
            continue
        ip = _inner_product_for(args, n, parser)
        report = check_orthogonality(family, ip, mode=args.mode)
        if not report.passed:
            any_fail = True
        results.append({"n": n, **report.to_json_dict()})
        if args.format == "csv":
            if args.mode == "within":
                gram_rows = gram_to_strings(gram_matrix(family.polys(), ip))
            else:
                monomials = [
                    Polynomial.monomial(a)
                    for a in exponents_up_to_degree(family.dimension, n - 1)
                ]
                gram_rows = [
                    [format_rational(ip.evaluate(e.poly, m)) for m in monomials]
                    for e in family.elements
                ]
    if args.format == "csv":
        _emit(_csv_text(gram_rows or []), args.out)
    else:
        payload = {
            "claim": "required Gram entries vanish over the degree range",
            "parameters": _parameters(args, degrees),
            "pass": not any_fail and not any_singular,
            "witnesses": results,
        }
        _emit_report(payload, results, args)
    if any_singular:
        return EXIT_SINGULAR
    return EXIT_CHECK_FAILED if any_fail else EXIT_OK


def cmd_dimtable(args, parser: _Parser) -> int:
    singular = set()
    witness: dict[int, list[tuple[int, int, int]]] = {}
    for n, j, nu in singularity_report(args.d, args.k, args.n_max):
        singular.add(n)
        witness.setdefault(n, []).append((n, j, nu))
    rows = []
    for n in range(args.n_max + 1):
        entry = {
            "n": n,
            "sigma": harmonic_dim(args.d, n),
            "dim_homogeneous": homogeneous_dim(args.d, n),
        }
        if n in singular:
            entry["achieved"] = None
            entry["singular"] = [
                {"j": j, "nu": nu} for (_, j, nu) in witness[n]
            ]
        else:
            family = family_by_kind("u", args.d, n, k=args.k)
            entry["achieved"] = len(family)
            entry["singular"] = []
        rows.append(entry)
    if args.format == "json":
        _emit(
            _json_text(
                {"d": args.d, "k": args.k, "n_max": args.n_max, "rows": rows}
            ),
            args.out,
        )
    elif args.format == "csv":
        table = [["n", "sigma", "dim_homogeneous", "achieved", "singular"]]
        for r in rows:
            marks = ";".join(f"(j={s['j']},nu={s['nu']})" for s in r["singular"])
            table.append(
                [
                    r["n"],
                    r["sigma"],
                    r["dim_homogeneous"],
                    "" if r["achieved"] is None else r["achieved"],
                    marks,
                ]
            )
        _emit(_csv_text(table), args.out)
    else:
        lines = []
        for r in rows:
            mark = (
                " SINGULAR "
                + ",".join(f"(j={s['j']},nu={s['nu']})" for s in r["singular"])
                if r["singular"]
                else ""
            )
            achieved = "-" if r["achieved"] is None else r["achieved"]
            lines.append(
                f"n={r['n']:<3} sigma={r['sigma']:<5} "
                f"dim={r['dim_homogeneous']:<6} achieved={achieved}{mark}"
            )
        _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_coeffs(args, parser: _Parser) -> int:
    rows = []
    for j in range(1, args.k):
        values = []
        for nu in range(j + 1):
            try:
                values.append(
                    format_rational(shell_coefficient(j, nu, args.n, args.k, args.d))
                )
            except SingularCoefficientError:
                values.append("singular")
        rows.append({"j": j, "coefficients": values})
    if args.format == "json":
        _emit(
            _json_text({"d": args.d, "k": args.k, "n": args.n, "rows": rows}),
            args.out,
        )
    elif args.format == "csv":
        table = [["j", "nu", "coefficient"]]
        for row in rows:
            for nu, value in enumerate(row["coefficients"]):
                table.append([row["j"], nu, value])
        _emit(_csv_text(table), args.out)
    else:
        lines = [
            f"j={row['j']}: " + "  ".join(
                f"nu={nu}: {v}" for nu, v in enumerate(row["coefficients"])
            )
            for row in rows
        ]
        _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# wiring
# ---------------------------------------------------------------------------


def _parameters(args, degrees: range) -> dict:
    params = {
        "family": args.family,
        "d": args.d,
        "n_min": degrees.start,
        "n_max": degrees.stop - 1,
    }
    for key in ("k", "mu", "lam", "ip", "mode", "seed"):
        value = getattr(args, key, None)
        if value is not None:
            name = "lambda" if key == "lam" else key
            params[name] = (
                format_rational(value) if isinstance(value, Fraction) else value
            )
    return params


def _emit_report(payload: dict, results: list, args) -> None:
    if args.format == "text":
        lines = []
        for entry in results:
            if "singular" in entry:
                s = entry["singular"]
                lines.append(
                    f"n={entry['n']} SINGULAR (j={s['j']}, nu={s['nu']})"
                )
            else:
                lines.append(
                    f"n={entry['n']} {'PASS' if entry['pass'] else 'FAIL'}"
                )
        if payload["pass"]:
            overall = "PASS"
        elif any("singular" in entry for entry in results):
            overall = "SINGULAR"
        else:
            overall = "FAIL"
        _emit("\n".join(lines) + f"\noverall {overall}\n", args.out)
    else:
        _emit(_json_text(payload), args.out)


def _add_common(sub: argparse.ArgumentParser, *, family: bool = True) -> None:
    if family:
        sub.add_argument("--family", choices=FAMILIES, required=True)
    sub.add_argument("--d", type=int, required=True, help="ambient dimension")
    sub.add_argument("--k", type=int, help="weight index for the 'u' family")
    sub.add_argument(
        "--mu",
        type=_fraction,
        help="weight exponent ('wmu' family, classical or star form)",
    )
    sub.add_argument("--out", help="output path (default stdout)")
    sub.add_argument("--seed", type=int, help="echoed into reports")


def build_parser() -> _Parser:
    parser = _Parser(prog="ballpde", description=__doc__.splitlines()[0])
    subs = parser.add_subparsers(dest="command", required=True)

    basis = subs.add_parser("basis", help="construct one family")
    _add_common(basis)
    basis.add_argument("--n", type=int, required=True, help="degree")
    basis.add_argument("--format", choices=("json", "text"), default="json")
    basis.set_defaults(handler=cmd_basis)

    eigen = subs.add_parser("eigencheck", help="verify the eigen-equation")
    _add_common(eigen)
    eigen.add_argument("--n", type=int, help="single degree")
    eigen.add_argument("--n-min", type=int, dest="n_min")
    eigen.add_argument("--n-max", type=int, dest="n_max")
    eigen.add_argument("--format", choices=("json", "text"), default="json")
    eigen.set_defaults(handler=cmd_eigencheck)

    ortho = subs.add_parser("orthocheck", help="verify orthogonality")
    _add_common(ortho)
    ortho.add_argument("--ip", choices=IP_KINDS, required=True)
    ortho.add_argument("--mode", choices=("within", "cross"), default="cross")
    ortho.add_argument(
        "--lambda",
        dest="lam",
        type=_fraction,
        help="bulk weight, rational > 0 (default 1)",
    )
    ortho.add_argument("--n", type=int, help="single degree")
    ortho.add_argument("--n-min", type=int, dest="n_min")
    ortho.add_argument("--n-max", type=int, dest="n_max")
    ortho.add_argument("--format", choices=("json", "text", "csv"), default="json")
    ortho.set_defaults(handler=cmd_orthocheck)

    dim = subs.add_parser("dimtable", help="dimension and singularity table")
    _add_common(dim, family=False)
    dim.add_argument("--n-max", type=int, dest="n_max", required=True)
    dim.add_argument("--format", choices=("json", "text", "csv"), default="text")
    dim.set_defaults(handler=cmd_dimtable)
    dim.set_defaults(family=None)

    coeffs = subs.add_parser("coeffs", help="shell coefficient triangle")
    _add_common(coeffs, family=False)
    coeffs.add_argument("--n", type=int, required=True, help="degree")
    coeffs.add_argument("--format", choices=("json", "text", "csv"), default="text")
    coeffs.set_defaults(handler=cmd_coeffs)
    coeffs.set_defaults(family=None)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command in ("dimtable", "coeffs") and (args.k is None or args.k < 2):
        parser.error(f"{args.command} requires --k >= 2")
    try:
        return args.handler(args, parser)
    except SingularCoefficientError as err:
        _emit(_json_text(_singular_json(err)), getattr(args, "out", None))
        return EXIT_SINGULAR
    except ValueError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
