"""Command-line interface: ``lslcopula <command> [flags]``.

Exit codes: 0 success, 1 a check came out negative (validation failed,
point outside a region), 2 usage or input error, 3 quadrature accuracy
failure, 4 simulated points outside a region.
"""

import argparse
import sys
from concurrent.futures import ProcessPoolExecutor
from contextlib import contextmanager

from . import regions
from .config import load_diagonal
from .copula import LowerSemilinearCopula, sample
from .diagonal import DEFAULT_GRID, make_family, validate
from .errors import AccuracyError, DomainError
from .markov import xi_via_markov
from .measures import measure_vector
from .quadrature import DEFAULT_TOL

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_ACCURACY, EXIT_VIOLATION = 0, 1, 2, 3, 4

FAMILY_FLAGS = ("a", "p", "alpha", "beta", "knots", "exponents")


def _floats(text):
    return [float(x) for x in text.split(",")]


def _add_diagonal_flags(p):
    g = p.add_argument_group("diagonal (config file, inline JSON, or family flags)")
    g.add_argument("--diagonal", help="path to a JSON config, or the JSON text itself")
    g.add_argument("--family", choices=["ua", "la", "power", "frechet", "example23",
                                        "mo_product", "piecewise"])
    g.add_argument("--a", type=float)
    g.add_argument("--p", type=float)
    g.add_argument("--alpha", type=float)
    g.add_argument("--beta", type=float)
    g.add_argument("--knots", type=_floats, help="comma-separated, first 0, last 1")
    g.add_argument("--exponents", type=_floats, help="comma-separated, each in [1, 2]")


def _diagonal(args):
    flags = {k: getattr(args, k) for k in FAMILY_FLAGS if getattr(args, k) is not None}
    if args.diagonal and (args.family or flags):
        raise DomainError("give either --diagonal or --family with its flags, not both")
    if args.diagonal:
        return load_diagonal(args.diagonal)
    if not args.family:
        raise DomainError("a diagonal is required: --diagonal or --family")
    return make_family(args.family, **flags)


@contextmanager
def _output(path):
    if path in (None, "-"):
        yield sys.stdout
    else:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            yield fh


def cmd_validate(args):
    report = validate(_diagonal(args), args.grid)
    print(report)
    return EXIT_OK if report.passed else EXIT_NEGATIVE


def cmd_measures(args):
    d = _diagonal(args)
    mv = measure_vector(d, args.tol)
    if args.route == "closed":
        print(mv)
        return EXIT_OK
    xi_markov = xi_via_markov(d, args.tol)
    if args.route == "markov":
        print(f"tau={mv.tau:.6g} rho={mv.rho:.6g} phi={mv.phi:.6g} xi={xi_markov:.6g}")
        return EXIT_OK
    print(mv)
    print(f"xi_closed={mv.xi:.6g} xi_markov={xi_markov:.6g} gap={abs(mv.xi - xi_markov):.3g}")
    return EXIT_OK


def cmd_region(args):
    lo, hi = regions.bounds(args.pair, args.x)
    inside = regions.contains(args.pair, args.x, args.y, args.slack)
    print(f"{'inside' if inside else 'outside'} lower={lo:.6g} upper={hi:.6g}")
    return EXIT_OK if inside else EXIT_NEGATIVE


def cmd_area(args):
    analytic, numeric = regions.area(args.pair)
    print(f"analytic={analytic:.12g} numeric={numeric:.12g}")
    return EXIT_OK


def _cloud_chunk(job):
    n, seed, max_pieces, tol, start = job
    return regions.simulate_cloud(n, seed, max_pieces, tol, start=start)


def cmd_simulate(args):
    if args.n < 1:
        raise DomainError("--n must be at least 1")
    if args.jobs > 1:
        size = -(-args.n // args.jobs)
        jobs = [(min(size, args.n - s), args.seed, args.max_pieces, args.tol, s)
                for s in range(0, args.n, size)]
        with ProcessPoolExecutor(args.jobs) as pool:
            cloud = [mv for part in pool.map(_cloud_chunk, jobs) for mv in part]
    else:
        cloud = regions.simulate_cloud(args.n, args.seed, args.max_pieces, args.tol)
    with _output(args.out) as fh:
        regions.write_cloud_csv(fh, cloud)
    bad = regions.cloud_violations(cloud, args.slack)
    if bad:
        for i, pair in bad:
            print(f"point {i} outside {pair}: {cloud[i]}", file=sys.stderr)
        return EXIT_VIOLATION
    return EXIT_OK


def cmd_sample(args):
    batch = sample(LowerSemilinearCopula(_diagonal(args)), args.n, args.seed)
    with _output(args.out) as fh:
        batch.to_csv(fh)
    return EXIT_OK


def cmd_boundary(args):
    if args.grid < 2:
        raise DomainError("--grid must be at least 2")
    with _output(args.out) as fh:
        regions.write_boundary_csv(fh, args.pair, args.grid)
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="lslcopula",
        description="Dependence measures and exact regions for lower semilinear copulas.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a diagonal's admissibility constraints")
    _add_diagonal_flags(p)
    p.add_argument("--grid", type=int, default=DEFAULT_GRID)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("measures", help="tau, rho, phi and xi of S_delta")
    _add_diagonal_flags(p)
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.add_argument("--route", choices=["closed", "markov", "both"], default="closed")
    p.set_defaults(func=cmd_measures)

    pairs = list(regions.PAIRS)
    p = sub.add_parser("region", help="test a point against an exact region")
    p.add_argument("--pair", choices=pairs, required=True)
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--y", type=float, required=True)
    p.add_argument("--slack", type=float, default=0.0)
    p.set_defaults(func=cmd_region)

    p = sub.add_parser("area", help="area of an exact region")
    p.add_argument("--pair", choices=pairs, required=True)
    p.set_defaults(func=cmd_area)

    p = sub.add_parser("simulate", help="measure cloud of random diagonals as CSV")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--max-pieces", type=int, default=8)
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.add_argument("--slack", type=float, default=regions.DEFAULT_SLACK)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("sample", help="sample pairs from S_delta as CSV")
    _add_diagonal_flags(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("boundary", help="region boundary curves as CSV")
    p.add_argument("--pair", choices=pairs, required=True)
    p.add_argument("--grid", type=int, default=1001)
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_boundary)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except AccuracyError as exc:
        print(f"lslcopula: accuracy failure: {exc}", file=sys.stderr)
        return EXIT_ACCURACY
    except (DomainError, OSError) as exc:
        print(f"lslcopula {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
