"""``mcprofile`` command line: ``fit`` a profile CSV or ``simulate`` the toy coverage study.

Exit codes: 0 success, 1 invalid input or flags, 2 numerical failure,
3 too many failed replicates in ``simulate``.
"""

import argparse
import sys

from .core import mcap
from .errors import McprofileError, NumericalError, ReplicateFailureRate, ValidationError
from .normal import chi2_1_ppf
from .profile_io import dump_json, read_profile_csv, write_fit_table, write_result
from .smoother import SmootherConfig
from .toy.model import ToySpec
from .toy.study import MIN_REPLICATIONS, coverage_study

EXIT_OK, EXIT_INVALID, EXIT_NUMERICAL, EXIT_STUDY = 0, 1, 2, 3


class UsageError(ValidationError):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad usage; 2 is reserved for numerical errors here
    def error(self, message):
        raise UsageError(message)


def build_parser():
    parser = _Parser(prog="mcprofile", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    fit = sub.add_parser("fit", help="MCAP confidence interval from a profile CSV")
    fit.add_argument("--input", required=True, help="CSV with header parameter,loglik")
    fit.add_argument("--confidence", type=float, default=0.95)
    fit.add_argument("--lambda", dest="span", type=float, default=0.75, help="smoother span")
    fit.add_argument("--ngrid", type=int, default=1000)
    fit.add_argument("--out", default="result.json")
    fit.add_argument("--fit-table", default=None, help="optional CSV of parameter,smoothed,quadratic")

    sim = sub.add_parser("simulate", help="coverage study on the lognormal toy model")
    sim.add_argument("--n", type=int, default=50)
    sim.add_argument("--j", type=int, default=3)
    sim.add_argument("--phi0", type=float, default=0.0)
    sim.add_argument("--sigma0", type=float, default=1.0)
    sim.add_argument("--k", type=int, default=25)
    sim.add_argument("--replications", type=int, default=1000)
    sim.add_argument("--confidence", type=float, default=0.95)
    sim.add_argument("--seed", type=int, default=0)
    sim.add_argument("--threads", type=int, default=1)
    sim.add_argument("--out", default="report.json")
    return parser


def cmd_fit(args):
    chi2_1_ppf(args.confidence)
    SmootherConfig(span=args.span, ngrid=args.ngrid)
    points = read_profile_csv(args.input)
    result = mcap(points, confidence=args.confidence, span=args.span, ngrid=args.ngrid)
    write_result(result, args.out)
    if args.fit_table:
        write_fit_table(result, args.fit_table)
    for warning in result.warnings:
        print(f"warning: {warning}", file=sys.stderr)
    b = result.budget
    print(f"mle={result.mle:.6g} ci=[{result.ci[0]:.6g},{result.ci[1]:.6g}] "
          f"delta={b.delta:.6g} se_mc={b.se_mc:.6g} se_stat={b.se_stat:.6g}")
    return EXIT_OK


def _print_report(report):
    print(f"replications={report.replications} mcap_coverage={report.mcap_coverage:.4f} "
          f"exact_coverage={report.exact_coverage:.4f} mean_width_ratio={report.mean_width_ratio:.4f} "
          f"failed={report.failed_replicates}")


def cmd_simulate(args):
    chi2_1_ppf(args.confidence)
    if args.replications < MIN_REPLICATIONS:
        raise UsageError(f"--replications must be at least {MIN_REPLICATIONS}")
    if args.threads < 1:
        raise UsageError("--threads must be at least 1")
    spec = ToySpec(n=args.n, j=args.j, phi0=args.phi0, sigma0=args.sigma0, k=args.k, master_seed=args.seed)
    try:
        report = coverage_study(spec, args.replications, args.confidence, threads=args.threads)
    except ReplicateFailureRate as err:
        dump_json(err.report.to_dict(), args.out)
        _print_report(err.report)
        print(f"ReplicateFailureRate: {err}", file=sys.stderr)
        return EXIT_STUDY
    dump_json(report.to_dict(), args.out)
    _print_report(report)
    return EXIT_OK


def main(argv=None):
    try:
        args = build_parser().parse_args(argv)
        if args.command == "fit":
            return cmd_fit(args)
        return cmd_simulate(args)
    except (ValidationError, OSError) as err:
        print(f"{type(err).__name__}: {err}", file=sys.stderr)
        return EXIT_INVALID
    except NumericalError as err:
        print(f"{type(err).__name__}: {err}", file=sys.stderr)
        return EXIT_NUMERICAL
    except McprofileError as err:
        print(f"{type(err).__name__}: {err}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
