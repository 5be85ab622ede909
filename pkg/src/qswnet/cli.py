import argparse
import logging
import sys

import yaml

from qswnet import __version__
from qswnet.errors import ConfigError, NumericalError, QswError
from qswnet.experiment import COMMANDS, ExperimentConfig
from qswnet.utils.config import Config

logger = logging.getLogger("qswnet")

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_NUMERICAL = 2

# command-line flag -> config path
OVERRIDES = {
    "model": "model",
    "ensemble": "ensemble*",
    "p": "grid/p",
    "tau": "grid/tau",
    "restarts": "optimizer/restarts",
    "seed": "experiment/seed",
    "runs": "robustness/n_runs",
    "error_pct": "robustness/error_pct",
    "study": "robustness/study",
    "mode": "robustness/mode",
    "depths": "depth/depths",
    "kind": "analytic/kind",
    "theta": "analytic/theta",
    "h": "analytic/h",
    "d": "analytic/d",
    "out": "^runtime/out",
    "workers": "^runtime/workers",
    "timings": "^runtime/timings",
    "progress": "^runtime/progress",
    "tracking_uri": "^tracking/uri",
}

# commands whose own config section holds these settings
SECTION_FLAGS = {
    "robustness": ("model", "p", "tau"),
    "depth": ("p", "tau"),
    "analytic": ("tau",),
}


def parse_ensemble(text):
    """``family:key=value,...`` to the ensemble section; values are read as YAML scalars."""
    family, _, rest = text.partition(":")
    family = family.strip()
    if not family:
        raise ConfigError("Ensemble %r has no family" % text)
    values = {"family": family}
    for item in filter(None, (s.strip() for s in rest.split(","))):
        key, sep, value = item.partition("=")
        if not sep:
            raise ConfigError("Malformed ensemble parameter %r, expected key=value" % item)
        values[key.strip()] = yaml.safe_load(value)
    return values


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="YAML experiment file")
    common.add_argument("--model", help="model spec, e.g. 2r-2r-2")
    common.add_argument("--ensemble", help="family:key=value,... e.g. equiphase:m_states=4")
    common.add_argument("--p", help="p grid: list '0,0.5,1' or linspace 'start:stop:num'")
    common.add_argument("--tau", help="tau grid, same syntax as --p")
    common.add_argument("--restarts", type=int)
    common.add_argument("--seed", type=int)
    common.add_argument("--out", help="output file (default: standard output)")
    common.add_argument("--workers", type=int, help="parallel worker processes")
    common.add_argument("--timings", action="store_const", const=True, help="add a runtime_s column")
    common.add_argument("--no-progress", dest="progress", action="store_const", const=False)
    common.add_argument("--tracking-uri", help="mlflow tracking URI")
    verbosity = common.add_mutually_exclusive_group()
    verbosity.add_argument("-v", "--verbose", action="store_true")
    verbosity.add_argument("-q", "--quiet", action="store_true")

    parser = argparse.ArgumentParser(prog="qswnet", description="Quantum stochastic walk networks for discrimination")
    parser.add_argument("--version", action="version", version="%(prog)s " + __version__)
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("sweep", parents=[common], help="optimize P_c over a (p, tau) grid")
    sub.add_parser("bounds", parents=[common], help="print the optimal bounds of an ensemble")
    analytic = sub.add_parser("analytic", parents=[common], help="closed forms against numeric evolution")
    analytic.add_argument("kind", nargs="?", choices=["p0", "p1"])
    analytic.add_argument("--theta", type=float)
    analytic.add_argument("--h", type=float, help="hopping rate (default: optimal per tau)")
    analytic.add_argument("--d", help="biases d1,d2,d3,d4 (default: optimal)")
    robustness = sub.add_parser("robustness", parents=[common], help="Monte-Carlo noise studies")
    robustness.add_argument("--runs", type=int)
    robustness.add_argument("--error-pct", help="error levels, same syntax as --p")
    robustness.add_argument("--study", choices=["state_noise", "disorder"])
    robustness.add_argument("--mode", choices=["multiplicative", "additive"])
    depth = sub.add_parser("depth", parents=[common], help="P_c against the number of intermediate layers")
    depth.add_argument("--depths", help="comma separated depths")
    sub.add_parser("topo", parents=[common], help="print a topology summary")
    return parser


def load_config(args) -> Config:
    config = Config(args.config) if args.config else Config()
    routed = SECTION_FLAGS.get(args.command, ())
    for flag, path in OVERRIDES.items():
        value = getattr(args, flag, None)
        if flag in routed:
            path = "%s/%s" % (args.command, flag)
        if flag == "ensemble" and value is not None:
            value = parse_ensemble(value)
        if value is not None:
            config.override(path, value)
    return config


def setup_logging(args):
    level = logging.DEBUG if args.verbose else logging.WARNING if args.quiet else logging.INFO
    logging.basicConfig(stream=sys.stderr, level=level, format="%(asctime)s %(levelname)s %(name)s: %(message)s")


def main(argv=None):
    args = build_parser().parse_args(argv)
    setup_logging(args)
    try:
        config = load_config(args)
        exp = ExperimentConfig.from_config(config)
        command = COMMANDS[args.command]
        if args.command in ("sweep", "robustness"):
            command(exp, params=config.tracked_params)
        else:
            command(exp)
    except NumericalError as e:
        logger.error("Numerical failure: %s", e)
        return EXIT_NUMERICAL
    except (QswError, ValueError, OSError, yaml.YAMLError) as e:
        logger.error("Configuration error: %s", e)
        return EXIT_CONFIG
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
