# ./DatasetManager/split.py
# User-level train/validation/test split with per-user fold-in / held-out partition

import math
from pathlib import Path
from typing import List, Tuple, Union

import numpy as np
import pandas as pd

from DatasetManager.dataset import csr_from_pairs, load_dataset, save_dataset
from DatasetManager.types import EvalUser, InteractionDataset, SplitDataset
from utils.binary_io import (BinaryReader, write_array, write_header, write_string, write_u32,
                             write_u64)
from utils.errors import ArtifactFormatError, ConfigError
from utils.logger import info, warning

EVAL_MAGIC = b"SAECF-EV"
EVAL_VERSION = 1

TRAIN_FILE = "train.ds"
VAL_FILE = "val.ev"
TEST_FILE = "test.ev"


def _train_subset(ds: InteractionDataset, users: np.ndarray) -> Tuple[InteractionDataset, np.ndarray]:
    """Restrict ds to `users`, re-indexing items densely in first-appearance order.

    Returns the subset and an old-item -> new-item map (-1 for items the subset never uses).
    """
    lengths = ds.row_lengths()[users]
    starts = ds.row_offsets[users]
    new_rows = np.repeat(np.arange(len(users), dtype=np.int64), lengths)
    within = np.arange(int(lengths.sum()), dtype=np.int64) - np.repeat(np.cumsum(lengths) - lengths, lengths)
    old_cols = ds.col_indices[np.repeat(starts, lengths) + within]

    new_cols, uniques = pd.factorize(old_cols, sort=False)
    item_map = np.full(ds.num_items, -1, dtype=np.int64)
    item_map[uniques] = np.arange(len(uniques))

    row_offsets, col_indices = csr_from_pairs(new_rows, new_cols, len(users))
    subset = InteractionDataset(
        num_users=len(users),
        num_items=len(uniques),
        row_offsets=row_offsets,
        col_indices=col_indices,
        user_ids=[ds.user_ids[u] for u in users],
        item_ids=[ds.item_ids[i] for i in uniques],
    )
    return subset, item_map


def _fold_in_split(ds: InteractionDataset, users: np.ndarray, item_map: np.ndarray,
                   fold_in_ratio: float, rng: np.random.Generator, label: str) -> List[EvalUser]:
    result = []
    discarded = 0
    for u in users:
        items = item_map[ds.row(u)]
        items = items[items >= 0]
        n_fold = int(math.floor(fold_in_ratio * len(items)))
        if n_fold < 1 or len(items) - n_fold < 1:
            discarded += 1
            continue
        shuffled = rng.permutation(items)
        result.append(EvalUser(
            user_id=ds.user_ids[u],
            fold_in=np.sort(shuffled[:n_fold]).astype(np.int32),
            held_out=np.sort(shuffled[n_fold:]).astype(np.int32),
        ))
    if discarded:
        warning(f"Discarded {discarded} {label} users left without fold-in or held-out items")
    return result


def split_by_user(ds: InteractionDataset, n_val: int, n_test: int, fold_in_ratio: float,
                  seed: int) -> SplitDataset:
    """Hold out n_val + n_test random users and split each of them into fold-in / held-out items."""
    if n_val < 0 or n_test < 0 or n_val + n_test >= ds.num_users:
        raise ConfigError(
            f"n_val + n_test = {n_val + n_test} must be below the number of users ({ds.num_users})"
        )
    if not 0.0 < fold_in_ratio < 1.0:
        raise ConfigError(f"fold_in_ratio must lie in (0, 1), got {fold_in_ratio}")

    rng = np.random.default_rng(seed)
    chosen = rng.permutation(ds.num_users)[:n_val + n_test]
    held = np.zeros(ds.num_users, dtype=bool)
    held[chosen] = True
    train_users = np.flatnonzero(~held)

    train, item_map = _train_subset(ds, train_users)
    val = _fold_in_split(ds, chosen[:n_val], item_map, fold_in_ratio, rng, "validation")
    test = _fold_in_split(ds, chosen[n_val:], item_map, fold_in_ratio, rng, "test")
    info(
        f"Split {ds.num_users} users into {train.num_users} train ({train.num_items} items), "
        f"{len(val)} validation and {len(test)} test users"
    )
    return SplitDataset(train=train, val=val, test=test)


def save_eval_users(users: List[EvalUser], path: Union[str, Path]) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "wb") as f:
        write_header(f, EVAL_MAGIC, EVAL_VERSION)
        write_u64(f, len(users))
        for user in users:
            write_string(f, user.user_id)
            for items in (user.fold_in, user.held_out):
                write_u32(f, len(items))
                write_array(f, items, "<u4")


def load_eval_users(path: Union[str, Path]) -> List[EvalUser]:
    reader = BinaryReader.from_file(path)
    reader.expect_header(EVAL_MAGIC, EVAL_VERSION)
    count = reader.read_u64("user count")
    users = []
    for _ in range(count):
        user_id = reader.read_string("user id")
        fold_in = reader.read_array(reader.read_u32("fold-in length"), "<u4", "fold-in items").astype(np.int32)
        held_out = reader.read_array(reader.read_u32("held-out length"), "<u4", "held-out items").astype(np.int32)
        if len(fold_in) == 0 or len(held_out) == 0 or np.intersect1d(fold_in, held_out).size:
            raise ArtifactFormatError(f"{path}: user {user_id!r} has an invalid fold-in/held-out split")
        users.append(EvalUser(user_id=user_id, fold_in=fold_in, held_out=held_out))
    reader.expect_end()
    return users


def save_split(split: SplitDataset, directory: Union[str, Path]) -> None:
    directory = Path(directory)
    save_dataset(split.train, directory / TRAIN_FILE)
    save_eval_users(split.val, directory / VAL_FILE)
    save_eval_users(split.test, directory / TEST_FILE)


def load_split(directory: Union[str, Path]) -> SplitDataset:
    directory = Path(directory)
    return SplitDataset(
        train=load_dataset(directory / TRAIN_FILE),
        val=load_eval_users(directory / VAL_FILE),
        test=load_eval_users(directory / TEST_FILE),
    )
