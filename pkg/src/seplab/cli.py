"""Command-line entry point: ``seplab gen|verify|sweep|certify|cluster``.

Exit statuses: 0 success, 1 validation error or failed verification,
2 reducible polynomial, 3 inconclusive certificate.
"""

from __future__ import annotations

import argparse
import json
import platform
import sys
import warnings
from datetime import datetime, timezone

from . import __version__
from .algebra import Poly, npoly_str
from .families import FAMILIES, FamilyRangeError, build
from .identities import run_suite, SUITES, mutated_p
from .irreducible import certify_irreducible, IRREDUCIBLE, REDUCIBLE
from .report import SweepConfig, run_sweep, render_csv, render_json, parse_grid, cluster_report
from .roots import DEFAULT_PRECISION, RootError, precision_cap

EXIT_OK, EXIT_INVALID, EXIT_REDUCIBLE, EXIT_INCONCLUSIVE = 0, 1, 2, 3


def _int_list(text):
    return [int(t) for t in text.split(",") if t.strip()]


def read_poly_file(path) -> Poly:
    """One line of space-separated integer coefficients, ascending degree."""
    with open(path) as fh:
        line = fh.readline()
    coeffs = [int(t) for t in line.split()]
    if not coeffs:
        raise ValueError(f"{path}: no coefficients")
    return Poly(coeffs)


def cmd_gen(args) -> int:
    poly = build(args.family, args.d, h=args.h, pad=args.pad, allow_small=args.allow_small)
    if args.n is not None:
        poly = poly.instantiate(args.n)
        print("[" + ", ".join(str(c) for c in poly.coeffs) + "]")
    elif args.symbolic:
        print("[" + ", ".join(npoly_str(c) for c in poly.coeffs) + "]")
    else:
        print(poly)
    return EXIT_OK


def cmd_verify(args) -> int:
    families = {"p": mutated_p} if args.inject_fault else None
    reports = run_suite(args.suite, d_max=args.dmax, D_max=args.rmax, families=families)
    width = max(len(r.identity) for r in reports)
    ok = True
    for r in reports:
        status = "PASS" if r.passed else "FAIL"
        print(f"{r.identity:<{width}}  {status}  {r.checked}")
        if not r.passed:
            ok = False
            print(f"    witness: {r.witness}")
        if r.identity == "yn":
            print(f"    constant C = {r.details.get('constant')}")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump([r.to_json() for r in reports], fh, indent=2)
            fh.write("\n")
    return EXIT_OK if ok else EXIT_INVALID


def cmd_sweep(args) -> int:
    cfg = SweepConfig(
        family=args.family,
        degrees=_int_list(args.degrees),
        n_grid=parse_grid(args.n),
        prec=args.prec,
        cap=args.cap if args.cap is not None else precision_cap(),
        output=args.out,
        format=args.format,
        workers=args.workers,
    ).validate()
    rows = run_sweep(cfg)
    text = render_csv(rows) if cfg.format == "csv" else render_json(rows)
    if cfg.output:
        with open(cfg.output, "w", newline="") as fh:
            fh.write(text)
        meta = {
            "argv": sys.argv[1:],
            "version": __version__,
            "python": platform.python_version(),
            "finished": datetime.now(timezone.utc).isoformat(),
            "rows": len(rows),
        }
        with open(cfg.output + ".meta.json", "w") as fh:
            json.dump(meta, fh, indent=2)
            fh.write("\n")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_certify(args) -> int:
    if args.file:
        poly = read_poly_file(args.file)
    else:
        if args.family is None or args.n is None:
            raise ValueError("certify needs FAMILY D --n N, or --file PATH")
        poly = build(args.family, args.d).instantiate(args.n)
    cert = certify_irreducible(poly, args.budget)
    print(json.dumps(cert.to_json(), indent=2))
    if cert.verdict == IRREDUCIBLE:
        return EXIT_OK
    if cert.verdict == REDUCIBLE:
        return EXIT_REDUCIBLE
    return EXIT_INCONCLUSIVE


def cmd_cluster(args) -> int:
    rep = cluster_report(args.delta, args.h, args.n, args.k, monic=args.monic, pad=args.pad,
                         prec=args.prec, cap=args.cap)
    print(json.dumps(rep.to_json(), indent=2))
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        # exit status 2 is reserved for "reducible"
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="seplab", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("gen", help="print a family member")
    g.add_argument("family", choices=FAMILIES)
    g.add_argument("d", type=int, nargs="?")
    g.add_argument("--n", type=int)
    g.add_argument("--symbolic", action="store_true")
    g.add_argument("--h", type=int, default=0, help="cluster length parameter")
    g.add_argument("--pad", type=int, default=0, help="extra power of x for clusters")
    g.add_argument("--allow-small", action="store_true")
    g.set_defaults(func=cmd_gen)

    v = sub.add_parser("verify", help="run exact identity checks")
    v.add_argument("suite", choices=("all",) + SUITES)
    v.add_argument("--dmax", type=int, default=12)
    v.add_argument("--rmax", type=int, default=25, help="largest degree for the r checks")
    v.add_argument("--json")
    v.add_argument("--inject-fault", action="store_true",
                   help="perturb the p recursion to confirm the checks can fail")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("sweep", help="measure separations over a (d, n) grid")
    s.add_argument("--family", required=True)
    s.add_argument("--degrees", required=True, help="comma list, e.g. 4,5,6")
    s.add_argument("--n", required=True, help="comma list or start:factor:count")
    s.add_argument("--prec", type=int, default=DEFAULT_PRECISION)
    s.add_argument("--cap", type=int)
    s.add_argument("--out")
    s.add_argument("--format", choices=("csv", "json"), default="csv")
    s.add_argument("--workers", type=int, default=1)
    s.set_defaults(func=cmd_sweep)

    c = sub.add_parser("certify", help="irreducibility certificate")
    c.add_argument("family", nargs="?", choices=FAMILIES)
    c.add_argument("d", type=int, nargs="?")
    c.add_argument("--n", type=int)
    c.add_argument("--file")
    c.add_argument("--budget", type=int, default=50)
    c.set_defaults(func=cmd_certify)

    k = sub.add_parser("cluster", help="cluster product exponent")
    k.add_argument("--delta", type=int, required=True)
    k.add_argument("--h", type=int, default=0)
    k.add_argument("--n", type=int, required=True)
    k.add_argument("--k", type=int)
    k.add_argument("--monic", action="store_true")
    k.add_argument("--pad", type=int, default=0)
    k.add_argument("--prec", type=int, default=DEFAULT_PRECISION)
    k.add_argument("--cap", type=int)
    k.set_defaults(func=cmd_cluster)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore" if getattr(args, "allow_small", False) else "default")
            return args.func(args)
    except (ValueError, FamilyRangeError, RootError, OSError) as exc:
        print(f"seplab: error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
