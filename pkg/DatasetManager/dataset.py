# ./DatasetManager/dataset.py
# Materializes the binary interaction matrix and its on-disk format

from pathlib import Path
from typing import Dict, Tuple, Union

import numpy as np
import pandas as pd

from DatasetManager.types import InteractionDataset, RawInteractions
from utils.binary_io import (BinaryReader, write_array, write_header, write_strings,
                             write_u64)
from utils.errors import ArtifactFormatError
from utils.logger import info

DATASET_MAGIC = b"SAECF-DS"
DATASET_VERSION = 1
U32_MAX = np.iinfo(np.uint32).max


def csr_from_pairs(user_idx: np.ndarray, item_idx: np.ndarray, num_users: int) -> Tuple[np.ndarray, np.ndarray]:
    """Sort (user, item) index pairs into CSR row offsets and column indices."""
    order = np.lexsort((item_idx, user_idx))
    col_indices = np.asarray(item_idx)[order].astype(np.int32)
    row_counts = np.bincount(np.asarray(user_idx, dtype=np.int64), minlength=num_users)
    row_offsets = np.zeros(num_users + 1, dtype=np.int64)
    np.cumsum(row_counts, out=row_offsets[1:])
    return row_offsets, col_indices


def build_dataset(raw: RawInteractions) -> InteractionDataset:
    """Binarize records into a CSR dataset, assigning indices in first-appearance order."""
    frame = raw.frame.drop_duplicates(subset=["user", "item"], keep="first")
    user_idx, user_ids = pd.factorize(frame["user"], sort=False)
    item_idx, item_ids = pd.factorize(frame["item"], sort=False)
    num_users, num_items = len(user_ids), len(item_ids)
    row_offsets, col_indices = csr_from_pairs(user_idx, item_idx, num_users)
    ds = InteractionDataset(
        num_users=num_users,
        num_items=num_items,
        row_offsets=row_offsets,
        col_indices=col_indices,
        user_ids=[str(u) for u in user_ids],
        item_ids=[str(i) for i in item_ids],
    )
    info(f"Built dataset: {num_users} users, {num_items} items, {ds.nnz} interactions")
    return ds


def dataset_statistics(ds: InteractionDataset) -> Dict[str, float]:
    """Users, items, interactions and sparsity (percent of non-zero cells)."""
    cells = ds.num_users * ds.num_items
    return {
        "users": ds.num_users,
        "items": ds.num_items,
        "interactions": ds.nnz,
        "sparsity_percent": (100.0 * ds.nnz / cells) if cells else 0.0,
    }


def save_dataset(ds: InteractionDataset, path: Union[str, Path]) -> None:
    """Write the dataset in the SAECF-DS binary format."""
    if ds.nnz > U32_MAX or ds.num_items > U32_MAX:
        raise ArtifactFormatError(f"dataset too large for 32-bit offsets ({ds.nnz} interactions)")
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "wb") as f:
        write_header(f, DATASET_MAGIC, DATASET_VERSION)
        write_u64(f, ds.num_users, ds.num_items, ds.nnz)
        write_array(f, ds.row_offsets, "<u4")
        write_array(f, ds.col_indices, "<u4")
        write_strings(f, ds.user_ids)
        write_strings(f, ds.item_ids)
    info(f"Saved dataset to {path}")


def load_dataset(path: Union[str, Path]) -> InteractionDataset:
    """Read a SAECF-DS file and check its CSR invariants."""
    reader = BinaryReader.from_file(path)
    reader.expect_header(DATASET_MAGIC, DATASET_VERSION)
    num_users = reader.read_u64("num_users")
    num_items = reader.read_u64("num_items")
    nnz = reader.read_u64("nnz")
    row_offsets = reader.read_array(num_users + 1, "<u4", "row_offsets").astype(np.int64)
    col_indices = reader.read_array(nnz, "<u4", "col_indices").astype(np.int32)
    user_ids = reader.read_strings(num_users, "user id")
    item_ids = reader.read_strings(num_items, "item id")
    reader.expect_end()
    ds = InteractionDataset(
        num_users=num_users,
        num_items=num_items,
        row_offsets=row_offsets,
        col_indices=col_indices,
        user_ids=user_ids,
        item_ids=item_ids,
    )
    try:
        ds.validate()
    except ArtifactFormatError as e:
        raise ArtifactFormatError(f"{path}: {e}") from e
    return ds
