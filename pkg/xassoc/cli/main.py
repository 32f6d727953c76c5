import argparse
import logging
import sys
from typing import Optional, Sequence

from xassoc.exceptions import XAssocError
from xassoc.models import MODEL_KINDS
from xassoc.types import DIRECTIONS

from . import commands

logger = logging.getLogger("xassoc")

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


def _csv_list(choices: Sequence[str]):
    def parse(value: str) -> list[str]:
        items = [item.strip() for item in value.split(",") if item.strip()]
        unknown = [item for item in items if item not in choices]
        if unknown or not items:
            raise argparse.ArgumentTypeError(
                f"expected a comma-separated subset of {','.join(choices)}"
            )
        return items

    return parse


def _add_logging(parser: argparse.ArgumentParser):
    group = parser.add_mutually_exclusive_group()
    group.add_argument("-v", "--verbose", action="store_true", help="log at DEBUG level")
    group.add_argument("-q", "--quiet", action="store_true", help="log warnings and errors only")


def _add_model_flags(parser: argparse.ArgumentParser):
    parser.add_argument("--model", choices=MODEL_KINDS, default="dca")
    parser.add_argument("--direction", choices=DIRECTIONS, default="t2y")
    parser.add_argument("--data", required=True, help="dataset directory")
    parser.add_argument("--out", required=True)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--epochs", type=int)
    parser.add_argument("--mt", type=int, help="platform-T private hidden units")
    parser.add_argument("--mc", type=int, help="common hidden units")
    parser.add_argument("--my", type=int, help="platform-Y private hidden units")
    parser.add_argument("--hidden", type=int, help="MLP hidden units")
    parser.add_argument("--atoms", type=int, help="latent attributes for la")
    parser.add_argument(
        "--lambda",
        dest="lam",
        type=float,
        help="weight decay (autoencoders, mlp), ridge penalty (lr) or sparsity weight (la)",
    )
    parser.add_argument("--mu", type=float, help="hidden-layer L1 weight (autoencoders)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="xassoc",
        description="Cross-platform user association and video recommendation",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    gen = subparsers.add_parser("gen", help="generate a synthetic dataset")
    gen.add_argument("--config", help="synthetic config (.toml or .json)")
    gen.add_argument("--out", required=True, help="output dataset directory")
    gen.add_argument("--seed", type=int, help="overrides the config seed")
    gen.add_argument("--users", type=int, help="overrides n_users")
    gen.add_argument("--disparity", type=float, help="overrides disparity")
    gen.set_defaults(handler=commands.cmd_gen)

    train = subparsers.add_parser("train", help="fit a model and write a checkpoint")
    _add_model_flags(train)
    train.set_defaults(handler=commands.cmd_train)

    predict = subparsers.add_parser("predict", help="predict the other platform for test users")
    predict.add_argument("--model", required=True, help="checkpoint path")
    predict.add_argument("--direction", choices=DIRECTIONS)
    predict.add_argument("--data", required=True)
    predict.add_argument("--out", required=True)
    predict.add_argument("--substitute", choices=("mean", "zeros"), default="mean")
    predict.add_argument("--split", choices=("test", "all"), default="test")
    predict.set_defaults(handler=commands.cmd_predict)

    eval_assoc = subparsers.add_parser("eval-assoc", help="MAE/RMSE of a predictions file")
    eval_assoc.add_argument("--preds", required=True)
    eval_assoc.add_argument("--data", required=True)
    eval_assoc.add_argument("--out", required=True)
    eval_assoc.add_argument("--csv")
    eval_assoc.set_defaults(handler=commands.cmd_eval_assoc)

    eval_rec = subparsers.add_parser("eval-rec", help="top-k recommendation precision/recall/F")
    eval_rec.add_argument("--model", required=True)
    eval_rec.add_argument("--data", required=True)
    eval_rec.add_argument("--k", type=int, default=10)
    eval_rec.add_argument("--seed", type=int)
    eval_rec.add_argument("--out", required=True)
    eval_rec.add_argument("--substitute", choices=("mean", "zeros"), default="mean")
    eval_rec.add_argument("--recs", help="also write ranked lists as JSONL")
    eval_rec.add_argument("--csv")
    eval_rec.set_defaults(handler=commands.cmd_eval_rec)

    measure = subparsers.add_parser("measure", help="cross-platform concentration analysis")
    measure.add_argument("--data", required=True)
    measure.add_argument("--clusters", type=int, default=10)
    measure.add_argument("--random-samples", type=int, default=200)
    measure.add_argument("--seed", type=int, default=0)
    measure.add_argument("--out", required=True)
    measure.add_argument("--csv")
    measure.set_defaults(handler=commands.cmd_measure)

    compare = subparsers.add_parser("baselines-compare", help="all models, both directions")
    compare.add_argument("--data", required=True)
    compare.add_argument("--out", required=True)
    compare.add_argument("--k", type=int, default=10)
    compare.add_argument("--seed", type=int, default=0)
    compare.add_argument("--repeats", type=int, default=1, help="seeds seed..seed+repeats-1")
    compare.add_argument("--epochs", type=int)
    compare.add_argument("--models", type=_csv_list(MODEL_KINDS), default=list(MODEL_KINDS))
    compare.add_argument("--directions", type=_csv_list(DIRECTIONS), default=list(DIRECTIONS))
    compare.add_argument("--csv")
    compare.set_defaults(handler=commands.cmd_baselines_compare)

    tune = subparsers.add_parser("tune", help="hyper-parameter search on a validation split")
    _add_model_flags(tune)
    tune.add_argument("--validation-fraction", type=float, default=0.2)
    tune.add_argument("--csv")
    tune.set_defaults(handler=commands.cmd_tune)

    for subparser in subparsers.choices.values():
        _add_logging(subparser)

    return parser


def configure_logging(verbose: bool = False, quiet: bool = False):
    level = logging.DEBUG if verbose else logging.WARNING if quiet else logging.INFO
    logging.basicConfig(level=level, format=LOG_FORMAT, force=True)


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()

    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2

    configure_logging(args.verbose, args.quiet)

    try:
        return args.handler(args)
    except XAssocError as exc:
        logger.error("%s", exc)
        return 1


def main() -> int:
    return run(sys.argv[1:])
