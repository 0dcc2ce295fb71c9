# ./main.py

import argparse
import sys
from typing import List, Optional

from Commands import (cmd_benchmark, cmd_compare, cmd_evaluate, cmd_preprocess, cmd_recommend, cmd_train,
                      load_cli_config)
from DatasetManager.presets import PRESETS
from utils.errors import SaecfError
from utils.logger import error, load_config

# Command definitions
commands = {
    "preprocess": cmd_preprocess,
    "train": cmd_train,
    "evaluate": cmd_evaluate,
    "recommend": cmd_recommend,
    "benchmark": cmd_benchmark,
    "compare": cmd_compare,
}

HELP = {
    "preprocess": "parse, filter and split a raw interaction file",
    "train": "train an autoencoder on a processed dataset",
    "evaluate": "compute Recall@K / NDCG@K for a checkpoint",
    "recommend": "print the top-K items for a user history",
    "benchmark": "compare sampled and full-output training throughput",
    "compare": "relative metric change between two evaluation reports",
}


def build_parser() -> argparse.ArgumentParser:
    # Options default to SUPPRESS so only flags given explicitly override the config file
    common = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    common.add_argument("--config", default=None, help="key=value or .json configuration file")
    common.add_argument("--log-level", default=None, help="override LOG_LEVEL from logging_config.txt")

    data = common.add_argument_group("dataset")
    data.add_argument("--data", help="raw file (preprocess) or processed directory")
    data.add_argument("--format", choices=["movielens", "triplets"])
    data.add_argument("--preset", choices=sorted(PRESETS))
    data.add_argument("--rating-threshold", type=float)
    data.add_argument("--min-user-items", type=int)
    data.add_argument("--min-item-users", type=int)
    data.add_argument("--n-val", type=int)
    data.add_argument("--n-test", type=int)
    data.add_argument("--fold-in-ratio", type=float)

    train = common.add_argument_group("training")
    train.add_argument("--batch-size", type=int)
    train.add_argument("--slice-rows", type=int)
    train.add_argument("--epochs", type=int)
    train.add_argument("--dropout", type=float)
    train.add_argument("--weight-decay", type=float)
    train.add_argument("--lr", type=float)
    train.add_argument("--hidden-dim", type=int)
    train.add_argument("--mode", choices=["sampled", "full"])
    train.add_argument("--seed", type=int)
    train.add_argument("--checkpoint-every", type=int)
    train.add_argument("--activation", choices=["tanh", "sigmoid", "relu"])
    train.add_argument("--decay-biases", action="store_true")
    train.add_argument("--no-prefetch", action="store_true")

    evaluation = common.add_argument_group("evaluation")
    evaluation.add_argument("--k", type=int, action="append", help="cutoff, repeatable")
    evaluation.add_argument("--recall-normalization", choices=["min", "held_out"])
    evaluation.add_argument("--split", choices=["val", "test"])
    evaluation.add_argument("--per-user", action="store_true")

    paths = common.add_argument_group("artifacts")
    paths.add_argument("--checkpoint")
    paths.add_argument("--out")
    paths.add_argument("--history", help="one external item id per line")
    paths.add_argument("--baseline")
    paths.add_argument("--candidate")

    bench = common.add_argument_group("benchmark")
    bench.add_argument("--warmup-batches", type=int)
    bench.add_argument("--timed-batches", type=int)

    parser = argparse.ArgumentParser(description="Sampled autoencoder collaborative filtering")
    subparsers = parser.add_subparsers(dest="command", required=True)
    for name in commands:
        subparsers.add_parser(name, parents=[common], help=HELP[name])
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.log_level:
        load_config(level_override=args.log_level.upper())
    try:
        cfg = load_cli_config(vars(args), config_path=args.config)
        commands[args.command](cfg)
    except (SaecfError, OSError) as e:
        error(str(e))
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
