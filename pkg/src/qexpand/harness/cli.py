"""Command line entry point: ``qexpand {list,verify,sweep,inversion}``."""

from __future__ import annotations

import argparse
import json
import sys

from .. import __version__
from ..errors import ConfigError, DomainError, NotFound
from ..identities import listing
from ..qcore import PRECISIONS
from .inversion_check import KERNEL_CHOICES, inversion_stress
from .runner import RunConfig, run

EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2


def _sweep_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--samples", type=int, default=50, help="accepted samples per identity (default 50)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=None,
                   help="relative tolerance (default 1e-8 double, 1e-20 extended)")
    p.add_argument("--max-terms", type=int, default=4000)
    p.add_argument("--precision", choices=sorted(PRECISIONS), default="double")
    p.add_argument("--report", metavar="PATH", help="write the JSON report here")
    p.add_argument("--workers", type=int, default=1, help="worker processes (results do not depend on it)")
    p.add_argument("--quiet", action="store_true", help="print only the summary line")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qexpand", description="Numerical verification of q-series identities.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("list", help="list catalog identities")
    p.add_argument("--json", action="store_true", help="machine-readable output")

    p = sub.add_parser("verify", help="verify selected identities at random samples")
    p.add_argument("--id", dest="ids", nargs="+", required=True, metavar="ID")
    _sweep_options(p)

    p = sub.add_parser("sweep", help="verify every identity in the catalog")
    _sweep_options(p)

    p = sub.add_parser("inversion", help="stress-test matrix inversion pairs")
    p.add_argument("--kernel", choices=KERNEL_CHOICES, default="linear")
    p.add_argument("--size", type=int, default=16, help="largest matrix index N (order N+1)")
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    return parser


def _cmd_list(args) -> int:
    rows = listing()
    if args.json:
        print(json.dumps(rows, indent=2))
    else:
        width = max(len(r["id"]) for r in rows)
        for r in rows:
            print(f"{r['id']:<{width}}  {r['anchor']}")
    return EXIT_OK


def _cmd_sweep(args, ids) -> int:
    config = RunConfig(
        identity_ids=tuple(ids),
        samples=args.samples,
        seed=args.seed,
        tol=args.tol,
        max_terms=args.max_terms,
        precision=args.precision,
        report_path=args.report,
        workers=args.workers,
    )
    report = run(config)
    n = config.samples
    if not args.quiet:
        for r in report.identities:
            errs = r.errors()
            worst = f"{max(errs):.2e}" if errs else "n/a"
            tag = "PASS" if r.passed(n) else "FAIL"
            extra = f"  ({r.exhausted})" if r.exhausted else ""
            print(f"{tag}  {r.id:<22} accepted={r.accepted:<3} rejected={r.rejections:<4} max_rel_err={worst}{extra}")
    failed = report.failed_ids
    print(f"{len(report.identities) - len(failed)}/{len(report.identities)} identities passed "
          f"(tol {config.effective_tol:g}, {config.precision}) in {report.wall_time:.1f}s")
    if args.report:
        print(f"report written to {args.report}")
    return EXIT_OK if not failed else EXIT_FAIL


def _cmd_inversion(args) -> int:
    if args.size < 0 or args.trials < 1 or not args.tol > 0:
        raise ConfigError("size must be >= 0, trials >= 1 and tol > 0")
    rep = inversion_stress(args.kernel, args.size, args.trials, args.seed, args.tol)
    tag = "PASS" if rep.passed else "FAIL"
    print(f"{tag}  kernel={rep.kernel} N={rep.size} trials={rep.trials} max_deviation={rep.max_deviation:.3e} "
          f"tol={rep.tol:g}")
    return EXIT_OK if rep.passed else EXIT_FAIL


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "list":
            return _cmd_list(args)
        if args.command == "verify":
            return _cmd_sweep(args, args.ids)
        if args.command == "sweep":
            return _cmd_sweep(args, ())
        return _cmd_inversion(args)
    except (ConfigError, NotFound, DomainError) as exc:
        print(f"qexpand: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"qexpand: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
