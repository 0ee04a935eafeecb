"""Command-line driver: a thin client of the run pipeline.

Exit codes: 0 success, 1 usage error, 2 invalid configuration, 3 runtime
failure.
"""

import argparse
import sys

from .config import ConfigError, RunConfig, load_config_file
from .fileio import render_spectrum, write_crossings, write_spectrum
from .pipeline import run_config
from .presets import load_preset, preset_names
from .spectrum import SweepError

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VALIDATION = 2
EXIT_RUNTIME = 3


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="lacspec",
        description="Simulate level anti-crossing spectra of coupled defect centers.",
    )
    src = parser.add_mutually_exclusive_group()
    src.add_argument("--config", metavar="PATH", help="YAML run configuration")
    src.add_argument(
        "--preset",
        choices=preset_names(),
        help="built-in system configuration",
    )
    parser.add_argument("--b-min", type=float, metavar="GAUSS", help="sweep start")
    parser.add_argument("--b-max", type=float, metavar="GAUSS", help="sweep end")
    parser.add_argument("--points", type=int, metavar="N", help="number of field points")
    parser.add_argument("--tau", type=float, metavar="SECONDS", help="mean evolution time")
    parser.add_argument("--output", metavar="PATH", help="spectrum file (default: stdout)")
    parser.add_argument(
        "--derivative", action="store_true", help="add the field derivative column"
    )
    parser.add_argument(
        "--crossings", action="store_true", help="also compute the level-crossing table"
    )
    parser.add_argument("--threads", type=int, metavar="N", help="worker threads")
    parser.add_argument("--seed", type=int, metavar="N", help="seed for randomized utilities")
    return parser


def _load(args) -> RunConfig:
    if args.config:
        cfg = load_config_file(args.config)
    else:
        cfg = load_preset(args.preset)
    data = cfg.model_dump()
    grid = data["grid"]
    if args.b_min is not None:
        grid["b_min_gauss"] = args.b_min
    if args.b_max is not None:
        grid["b_max_gauss"] = args.b_max
    if args.points is not None:
        grid["n_points"] = args.points
    if args.tau is not None:
        data["tau_s"] = args.tau
    if args.threads is not None:
        data["threads"] = args.threads
    if args.seed is not None:
        data["seed"] = args.seed
    if args.output is not None:
        data["output_path"] = args.output
    outputs = list(data["outputs"])
    if args.derivative and "derivative" not in outputs:
        outputs.append("derivative")
    if args.crossings and "crossings" not in outputs:
        outputs.append("crossings")
    data["outputs"] = outputs
    return RunConfig.model_validate(data)


def run_cli(argv: list[str]) -> int:
    parser = build_parser()
    if not argv:
        parser.print_usage(sys.stderr)
        print("error: one of --config or --preset is required", file=sys.stderr)
        return EXIT_USAGE
    try:
        args = parser.parse_args(argv)
        if not args.config and not args.preset:
            raise _UsageError("one of --config or --preset is required")
    except _UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    try:
        cfg = _load(args)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    except (ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION

    try:
        result = run_config(cfg)
        if cfg.output_path:
            write_spectrum(result.spectrum, cfg.output_path, config=cfg)
            if result.crossings is not None:
                write_crossings(result.crossings, cfg.output_path + ".crossings.tsv")
        else:
            sys.stdout.write(render_spectrum(result.spectrum, config=cfg))
            if result.crossings is not None:
                for member, c in result.crossings:
                    print(
                        f"# crossing member={member} B0={c.field_gauss:.6g} G "
                        f"levels=({c.level_lo},{c.level_hi}) gap={c.min_gap_mhz:.6g} MHz "
                        f"[{c.kind}]"
                    )
    except (SweepError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME

    s = result.summary
    print(
        f"dim={s['dim']} points={s['n_points']} members={s['n_members']} "
        f"wall={s['wall_time_s']}s",
        file=sys.stderr,
    )
    return EXIT_OK


def main() -> None:
    sys.exit(run_cli(sys.argv[1:]))


if __name__ == "__main__":
    main()
