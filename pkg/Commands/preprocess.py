# ./Commands/preprocess.py

import json
from pathlib import Path

from Commands.config import CliConfig
from DatasetManager.dataset import build_dataset, dataset_statistics
from DatasetManager.filtering import filter_min_counts
from DatasetManager.parsers import parse_ratings_csv, parse_triplets_tsv
from DatasetManager.split import save_split, split_by_user
from utils.logger import info

SUMMARY_FILE = "summary.json"


def cmd_preprocess(cfg: CliConfig) -> None:
    """Raw interactions -> filtered binary dataset -> train/val/test split on disk."""
    cfg.require("data", "out")
    if cfg.format == "movielens":
        raw = parse_ratings_csv(cfg.data, cfg.rating_threshold)
    else:
        raw = parse_triplets_tsv(cfg.data)
    raw = filter_min_counts(raw, cfg.min_user_items, cfg.min_item_users)
    ds = build_dataset(raw)
    split = split_by_user(ds, cfg.n_val, cfg.n_test, cfg.fold_in_ratio, cfg.seed)

    out = Path(cfg.out)
    save_split(split, out)
    stats = dataset_statistics(ds)
    summary = {
        "source": str(cfg.data),
        "preset": cfg.preset,
        "format": cfg.format,
        "rating_threshold": cfg.rating_threshold,
        "min_user_items": cfg.min_user_items,
        "min_item_users": cfg.min_item_users,
        "seed": cfg.seed,
        "dataset": stats,
        "train": dataset_statistics(split.train),
        "val_users": len(split.val),
        "test_users": len(split.test),
    }
    with open(out / SUMMARY_FILE, "w") as f:
        json.dump(summary, f, indent=2, sort_keys=True)
    info(f"Wrote processed dataset to {out}")

    print(f"{'users':>14} {'items':>10} {'interactions':>14} {'sparsity %':>11}")
    print(f"{stats['users']:>14,} {stats['items']:>10,} {stats['interactions']:>14,} {stats['sparsity_percent']:>11.3f}")
