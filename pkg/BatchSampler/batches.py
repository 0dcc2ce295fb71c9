# ./BatchSampler/batches.py
# Mini-batch gathering, column downsampling and slicing

from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Sequence, Tuple

import numpy as np

from BatchSampler.epoch import EpochPlan, plan_epoch
from BatchSampler.prefetch import prefetch
from DatasetManager.types import InteractionDataset
from utils.errors import ConfigError
from utils.logger import log_sampler


@dataclass
class SparseBatch:
    """Coordinate-list view of a mini-batch: (rows[k], cols[k]) are the non-zeros."""
    user_rows: np.ndarray
    rows: np.ndarray
    cols: np.ndarray

    @property
    def num_rows(self) -> int:
        return len(self.user_rows)

    @property
    def entries(self) -> np.ndarray:
        return np.column_stack((self.rows, self.cols))


@dataclass
class SampledBatch:
    """Dense {0,1} batch restricted to `columns` (sorted global item indices).

    A full-width batch covers every item and is decoded against all outputs.
    """
    columns: np.ndarray
    dense: np.ndarray
    user_rows: np.ndarray = field(default_factory=lambda: np.empty(0, dtype=np.int64))
    full_width: bool = False

    @property
    def num_rows(self) -> int:
        return self.dense.shape[0]

    @property
    def size(self) -> int:
        return len(self.columns)


def gather_batch(ds: InteractionDataset, users: Sequence[int]) -> SparseBatch:
    """Concatenate the CSR rows of `users` with local row numbering."""
    users = np.asarray(users, dtype=np.int64)
    if len(users) and (users.min() < 0 or users.max() >= ds.num_users):
        raise IndexError(f"user index out of range [0, {ds.num_users})")
    starts = ds.row_offsets[users]
    lengths = ds.row_offsets[users + 1] - starts
    total = int(lengths.sum())
    rows = np.repeat(np.arange(len(users), dtype=np.int64), lengths)
    within = np.arange(total, dtype=np.int64) - np.repeat(np.cumsum(lengths) - lengths, lengths)
    cols = ds.col_indices[np.repeat(starts, lengths) + within].astype(np.int64)
    return SparseBatch(user_rows=users, rows=rows, cols=cols)


def downsample_columns(b: SparseBatch, dtype=np.float32) -> SampledBatch:
    """Dense sub-matrix over the union of the batch's non-zero columns."""
    columns, local = np.unique(b.cols, return_inverse=True)
    dense = np.zeros((b.num_rows, len(columns)), dtype=dtype)
    dense[b.rows, local.reshape(-1)] = 1
    log_sampler(f"Downsampled {b.num_rows} users to {len(columns)} columns")
    return SampledBatch(columns=columns, dense=dense, user_rows=b.user_rows)


def full_width_batch(ds: InteractionDataset, users: Sequence[int], dtype=np.float32) -> SampledBatch:
    """Dense batch over every item, the input of full-output training."""
    b = gather_batch(ds, users)
    dense = np.zeros((b.num_rows, ds.num_items), dtype=dtype)
    dense[b.rows, b.cols] = 1
    return SampledBatch(columns=np.arange(ds.num_items, dtype=np.int64), dense=dense,
                        user_rows=b.user_rows, full_width=True)


def slice_batch(sb: SampledBatch, slice_rows: int) -> List[SampledBatch]:
    """Row-wise partition sharing the parent's column list."""
    if slice_rows < 1:
        raise ConfigError(f"slice_rows must be >= 1, got {slice_rows}")
    if slice_rows >= sb.num_rows:
        return [sb]
    return [
        SampledBatch(columns=sb.columns, dense=sb.dense[start:start + slice_rows],
                     user_rows=sb.user_rows[start:start + slice_rows], full_width=sb.full_width)
        for start in range(0, sb.num_rows, slice_rows)
    ]


def prepare_batch(ds: InteractionDataset, users: np.ndarray, slice_rows: int, full_width: bool = False,
                  dtype=np.float32) -> List[SampledBatch]:
    """Gather, downsample (or densify at full width) and slice one mini-batch."""
    if full_width:
        sb = full_width_batch(ds, users, dtype=dtype)
    else:
        sb = downsample_columns(gather_batch(ds, users), dtype=dtype)
    return slice_batch(sb, slice_rows)


def sampled_input_size_stats(ds: InteractionDataset, m: int, seed: int, epoch: int = 0) -> Dict:
    """Mean / std of the downsampled column count over one epoch, without training."""
    plan = plan_epoch(ds.num_users, m, seed, epoch)
    sizes = np.array([len(np.unique(gather_batch(ds, users).cols)) for users in plan.batches()],
                     dtype=np.int64)
    return {
        "batch_size": m,
        "batches": len(sizes),
        "mean": float(sizes.mean()) if len(sizes) else 0.0,
        "std": float(sizes.std()) if len(sizes) else 0.0,
        "sizes": sizes,
    }


def iterate_epoch_batches(ds: InteractionDataset, plan: EpochPlan, slice_rows: int, full_width: bool = False,
                          dtype=np.float32, use_prefetch: bool = True) -> Iterator[Tuple[int, List[SampledBatch], int]]:
    """Yield (batch index, slices, column count) for every chunk of the plan, in order."""
    def prepare(item: Tuple[int, np.ndarray]) -> Tuple[int, List[SampledBatch], int]:
        index, users = item
        slices = prepare_batch(ds, users, slice_rows, full_width=full_width, dtype=dtype)
        return index, slices, slices[0].size

    yield from prefetch(enumerate(plan.batches()), prepare, enabled=use_prefetch)
