"""Command-line entry point: ``ioaco {aroi,run,campaign,report,gen-dms}``.

Exit codes: 0 success, 1 usage error, 2 invalid configuration or input,
3 failure while running. The default output directory is ``$IOACO_OUT`` or
the current directory.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from pathlib import Path

from .assessment import indicators
from .campaign import (aroi_to_dict, compute_aroi, dumps, format_report, load_aroi, run_campaign,
                       write_json, write_report, atomic_write_text)
from .config import ConfigError, format_dms, generate_dm_settings, load_dms, load_plan
from .optimizer import OptimizerConfig, run
from .outranking import DmValidationError
from .problems import get_problem

log = logging.getLogger("ioaco")

EXIT_OK, EXIT_USAGE, EXIT_INVALID, EXIT_RUNTIME = 0, 1, 2, 3
ENV_OUT = "IOACO_OUT"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: {message}")


def _default_out() -> str:
    return os.environ.get(ENV_OUT, ".")


def _pick_dm(path, name, n_obj):
    dms = load_dms(path)
    if name is not None:
        match = [dm for dm in dms if dm.name == name]
        if not match:
            raise ConfigError(f"no DM named {name!r} in {path}")
        dm = match[0]
    else:
        dm = dms[0]
    if dm.n != n_obj:
        raise ConfigError(f"DM {dm.name!r} has {dm.n} objectives, problem has {n_obj}")
    return dm


def _resolve(out_dir, path) -> Path:
    path = Path(path)
    return path if path.is_absolute() else Path(out_dir) / path


def cmd_aroi(args) -> int:
    get_problem(args.problem, args.m)
    dm = _pick_dm(args.dm_config, args.dm, args.m)
    aroi = compute_aroi(args.problem.lower(), args.m, dm, args.count, args.seed)
    target = _resolve(args.out, args.output or f"aroi-{args.problem.lower()}-m{args.m}-{dm.name}-n{args.count}.json")
    write_json(target, aroi_to_dict(aroi))
    print(f"A-RoI with {len(aroi)} point(s) written to {target}")
    return EXIT_OK


def cmd_run(args) -> int:
    spec = get_problem(args.problem, args.m)
    dm = None
    if args.baseline:
        if args.dm_config:
            print("warning: --baseline ignores the DM configuration", file=sys.stderr)
    else:
        if not args.dm_config:
            raise ConfigError("preference mode needs --dm-config (or use --baseline)")
        dm = _pick_dm(args.dm_config, args.dm, args.m)
    config = OptimizerConfig(kappa=args.kappa, n_ants=args.ants, iter_max=args.iterations, zeta=args.zeta,
                             xi=args.xi, mode="pareto-baseline" if args.baseline else "preference",
                             seed=args.seed, trace=args.trace)
    aroi = load_aroi(args.aroi) if args.aroi else None
    result = run(spec, dm, config)
    target = _resolve(args.out, args.output or f"run-{spec.id}-m{args.m}-s{args.seed}.json")
    data = result.to_dict()
    if aroi is not None:
        data["indicators"] = indicators(result.best_f, aroi).as_dict()
    write_json(target, data)
    print(f"best-compromise set: {len(result.best_indices)} solution(s); {result.evaluations} evaluations")
    if aroi is not None:
        for name, value in data["indicators"].items():
            print(f"  {name} = {value:.6g}")
    print(f"written to {target}")
    return EXIT_OK


def cmd_campaign(args) -> int:
    plan = load_plan(args.plan)
    out_dir = Path(args.out_dir or args.out)
    summary = run_campaign(plan, out_dir, threads=args.threads, timing=args.timing)
    print(f"{summary.total} cells ({summary.computed} computed, {summary.skipped} already present); "
          f"results in {summary.csv_path}")
    write_report(summary.csv_path, out_dir, alpha=args.alpha)
    return EXIT_OK


def cmd_report(args) -> int:
    out_dir = Path(args.out) if args.write else None
    report = write_report(args.results, out_dir, alpha=args.alpha, by_dm=args.by_dm)
    if args.json:
        sys.stdout.write(dumps(report))
    else:
        sys.stdout.write(format_report(report))
    return EXIT_OK


def cmd_gen_dms(args) -> int:
    dms = generate_dm_settings(args.count, args.seed, args.m)
    text = format_dms(dms)
    if args.output:
        target = _resolve(args.out, args.output)
        atomic_write_text(target, text)
        print(f"{len(dms)} DM model(s) written to {target}")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    def globals_(defaults: bool) -> argparse.ArgumentParser:
        # subcommands repeat the global flags without defaults, so a value given
        # before the subcommand is not reset by it
        g = _Parser(add_help=False)
        pick = (lambda v: v) if defaults else (lambda v: argparse.SUPPRESS)
        g.add_argument("--seed", type=int, default=pick(0), help="master or run seed (default 0)")
        g.add_argument("--threads", type=int, default=pick(1), help="worker processes for campaigns")
        g.add_argument("--out", default=pick(_default_out()), help=f"output directory (default ${ENV_OUT} or .)")
        g.add_argument("-v", "--verbose", action="store_true", default=pick(False))
        return g

    common = globals_(False)
    parser = _Parser(prog="ioaco", description=__doc__.splitlines()[0], parents=[globals_(True)])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("aroi", parents=[common], help="sample a Pareto front and cache its A-RoI")
    p.add_argument("problem")
    p.add_argument("m", type=int)
    p.add_argument("--dm-config", required=True)
    p.add_argument("--dm", help="DM name inside the config (default: first)")
    p.add_argument("--count", type=int, default=5000, help="front sample size")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_aroi)

    p = sub.add_parser("run", parents=[common], help="one optimizer run")
    p.add_argument("problem")
    p.add_argument("m", type=int)
    p.add_argument("--dm-config")
    p.add_argument("--dm")
    p.add_argument("--baseline", action="store_true", help="preference-free Pareto ranking")
    p.add_argument("--kappa", type=int, default=50)
    p.add_argument("--ants", type=int, default=None)
    p.add_argument("--iterations", type=int, default=300)
    p.add_argument("--zeta", type=float, default=0.1)
    p.add_argument("--xi", type=float, default=0.5)
    p.add_argument("--trace", action="store_true")
    p.add_argument("--aroi", help="A-RoI file; prints indicators of the final set")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("campaign", parents=[common], help="run (or resume) an experiment plan")
    p.add_argument("plan")
    p.add_argument("out_dir", nargs="?")
    p.add_argument("--alpha", type=float, default=0.05)
    p.add_argument("--timing", action="store_true", help="record wall time (breaks byte-identical reruns)")
    p.set_defaults(func=cmd_campaign)

    p = sub.add_parser("report", parents=[common], help="statistical comparison of a results CSV")
    p.add_argument("results")
    p.add_argument("--alpha", type=float, default=0.05)
    p.add_argument("--by-dm", action="store_true", help="treat each (problem, m, DM) as a problem")
    p.add_argument("--json", action="store_true")
    p.add_argument("--write", action="store_true", help="also write report.txt/json into --out")
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("gen-dms", parents=[common], help="synthetic DM models")
    p.add_argument("m", type=int)
    p.add_argument("--count", type=int, default=10)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen_dms)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (ConfigError, DmValidationError, ValueError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except Exception as exc:  # noqa: BLE001
        log.debug("run failed", exc_info=True)
        print(f"failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
