import argparse
import logging
import sys

from app.experiments import run
from app.model.Config import COMMANDS, Config, OUTPUT_FORMATS, RunConfig
from app.params import VERSION
from app.utils.errors import UsageError, WeylError
from app.utils.reports import metadata, render_csv, render_json, resolve_output_path, write_report

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


def parse_n_list(text):
    try:
        return tuple(int(item) for item in text.split(",") if item.strip())
    except ValueError as error:
        raise argparse.ArgumentTypeError(f"expected comma separated integers, got '{text}'") from error


def build_parser() -> argparse.ArgumentParser:
    config = Config()
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, default=None, help="Order of the algebra.")
    common.add_argument("--n-list", type=parse_n_list, default=None, help="Ascending orders, e.g. 32,64,128.")
    common.add_argument("--seed", type=int, default=config.seed)
    common.add_argument("--trials", type=int, default=config.trials)
    common.add_argument("--output-format", choices=OUTPUT_FORMATS, default="json")
    common.add_argument("--output-path", default=None,
                        help="Report file (default: $WEYL_OUTPUT_DIR/<command>.<format>, else stdout).")
    common.add_argument("--verbose", action="store_true", help="Debug logging on stderr.")
    common.add_argument("--alpha", type=float, default=config.alpha, help="Wave stiffness.")
    common.add_argument("--dt", type=float, default=config.dt, help="Wave time step.")
    common.add_argument("--steps", type=int, default=config.steps, help="Wave integration steps.")
    common.add_argument("--sample-every", type=int, default=config.sample_every)
    common.add_argument("--mode", type=int, default=config.mode, help="Fourier mode for the dispersion check.")

    parser = argparse.ArgumentParser(prog="weyl", description="Finite Weyl algebra experiments")
    parser.add_argument("--version", action="version", version=VERSION)
    subparsers = parser.add_subparsers(dest="command", required=True)
    for command in COMMANDS:
        subparsers.add_parser(command, parents=[common])
    return parser


def run_config_from_args(args) -> RunConfig:
    config = Config()
    # commands with a default order report it in their metadata
    default_n = {"explode": config.explode_n, "wave": config.wave_n}.get(args.command)
    n_list = args.n_list
    if args.command == "limit" and n_list is None:
        n_list = tuple(config.n_list)
    return RunConfig(
        command=args.command,
        n=args.n if args.n is not None else default_n,
        n_list=n_list,
        seed=args.seed,
        trials=args.trials,
        output_format=args.output_format,
        output_path=args.output_path,
        alpha=args.alpha,
        dt=args.dt,
        steps=args.steps,
        sample_every=args.sample_every,
        mode=args.mode,
    )


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(stream=sys.stderr, level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    cfg = run_config_from_args(args)
    try:
        result = run(cfg)
    except UsageError as error:
        log.error("%s", error)
        return EXIT_USAGE
    except (WeylError, ValueError) as error:
        log.error("%s failed: %s", cfg.command, error)
        return EXIT_FAILURE

    header = metadata(cfg)
    if cfg.output_format == "csv":
        text = render_csv(header, result.frame)
    else:
        text = render_json(header, result.payload)
    write_report(text, resolve_output_path(cfg.output_path, cfg.command, cfg.output_format))
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
