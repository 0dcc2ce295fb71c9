# ./tests/conftest.py

import os
from typing import List, Sequence

import hypothesis
import numpy as np
import pytest

from DatasetManager.dataset import csr_from_pairs
from DatasetManager.types import InteractionDataset
from utils.logger import load_config

np.seterr(all="warn")

hypothesis.settings.register_profile("default", max_examples=50, deadline=None)
hypothesis.settings.register_profile("fast", max_examples=5, deadline=None)
hypothesis.settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

# Tests run quietly regardless of the repository logging_config.txt
load_config(level_override="WARNING")


def make_dataset(rows: Sequence[Sequence[int]], num_items: int) -> InteractionDataset:
    """CSR dataset from per-user item lists, ids u0.. / i0.."""
    user_idx = np.repeat(np.arange(len(rows)), [len(set(r)) for r in rows])
    item_idx = np.concatenate([sorted(set(r)) for r in rows]) if rows else np.empty(0, dtype=np.int64)
    row_offsets, col_indices = csr_from_pairs(user_idx, np.asarray(item_idx, dtype=np.int64), len(rows))
    return InteractionDataset(
        num_users=len(rows),
        num_items=num_items,
        row_offsets=row_offsets,
        col_indices=col_indices,
        user_ids=[f"u{u}" for u in range(len(rows))],
        item_ids=[f"i{i}" for i in range(num_items)],
    )


def random_rows(num_users: int, num_items: int, max_items: int, seed: int) -> List[List[int]]:
    """Random rows, every item used at least once."""
    rng = np.random.default_rng(seed)
    rows = [list(rng.choice(num_items, size=rng.integers(1, max_items + 1), replace=False))
            for _ in range(num_users)]
    for item in range(num_items):
        rows[item % num_users].append(item)
    return [sorted(set(int(i) for i in r)) for r in rows]


def block_rows(num_users: int = 50, num_items: int = 20, seed: int = 3) -> List[List[int]]:
    """Two user groups, each interacting only with its own half of the items."""
    rng = np.random.default_rng(seed)
    half = num_items // 2
    rows = []
    for u in range(num_users):
        offset = 0 if u < num_users // 2 else half
        rows.append(sorted(offset + rng.choice(half, size=6, replace=False)))
    return rows


@pytest.fixture
def toy_dataset() -> InteractionDataset:
    return make_dataset(random_rows(40, 25, 6, seed=11), 25)


@pytest.fixture
def block_dataset() -> InteractionDataset:
    return make_dataset(block_rows(), 20)


def write_ratings_csv(path, records) -> None:
    with open(path, "w") as f:
        f.write("userId,movieId,rating,timestamp\n")
        for user, item, rating in records:
            f.write(f"{user},{item},{rating},1000\n")


@pytest.fixture(scope="session")
def ml20m_path():
    path = os.environ.get("SAECF_ML20M")
    if not path or not os.path.exists(path):
        pytest.skip("set SAECF_ML20M to the ML-20M ratings.csv")
    return path
