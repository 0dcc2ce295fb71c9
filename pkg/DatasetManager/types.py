# ./DatasetManager/types.py

from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, List, Tuple

import numpy as np
import pandas as pd

from utils.errors import ArtifactFormatError

RAW_COLUMNS = ["user", "item", "value"]


@dataclass
class RawInteractions:
    """Parsed (user, item, value) records before binarization.

    Backed by a DataFrame with string ``user``/``item`` columns and a float
    ``value`` column; rows may repeat a (user, item) pair.
    """
    frame: pd.DataFrame

    @classmethod
    def empty(cls) -> "RawInteractions":
        return cls(pd.DataFrame({
            "user": pd.Series([], dtype=object),
            "item": pd.Series([], dtype=object),
            "value": pd.Series([], dtype=np.float64),
        }))

    @classmethod
    def from_records(cls, records: List[Tuple[str, str, float]]) -> "RawInteractions":
        if not records:
            return cls.empty()
        frame = pd.DataFrame(records, columns=RAW_COLUMNS)
        frame["user"] = frame["user"].astype(str).astype(object)
        frame["item"] = frame["item"].astype(str).astype(object)
        frame["value"] = frame["value"].astype(np.float64)
        return cls(frame)

    @property
    def records(self) -> List[Tuple[str, str, float]]:
        return list(zip(self.frame["user"], self.frame["item"], self.frame["value"].astype(float)))

    def __len__(self) -> int:
        return len(self.frame)


@dataclass
class InteractionDataset:
    """Binary user x item interactions in CSR form.

    Row ``u`` holds the sorted item indices of ``I_u``; ``item_user_counts[i]``
    is ``|U_i|``.
    """
    num_users: int
    num_items: int
    row_offsets: np.ndarray
    col_indices: np.ndarray
    user_ids: List[str]
    item_ids: List[str]
    item_user_counts: np.ndarray = field(default=None)

    def __post_init__(self):
        self.row_offsets = np.asarray(self.row_offsets, dtype=np.int64)
        self.col_indices = np.asarray(self.col_indices, dtype=np.int32)
        if self.item_user_counts is None:
            self.item_user_counts = np.bincount(self.col_indices, minlength=self.num_items).astype(np.int64)

    @property
    def nnz(self) -> int:
        return int(self.row_offsets[-1]) if len(self.row_offsets) else 0

    @cached_property
    def user_id_map(self) -> Dict[str, int]:
        return {uid: i for i, uid in enumerate(self.user_ids)}

    @cached_property
    def item_id_map(self) -> Dict[str, int]:
        return {iid: i for i, iid in enumerate(self.item_ids)}

    def row(self, user: int) -> np.ndarray:
        """Sorted item indices of one user (I_u)."""
        return self.col_indices[self.row_offsets[user]:self.row_offsets[user + 1]]

    def row_lengths(self) -> np.ndarray:
        return np.diff(self.row_offsets)

    def validate(self) -> None:
        """Check the CSR invariants; raises ArtifactFormatError on the first violation."""
        offsets = self.row_offsets
        if len(offsets) != self.num_users + 1:
            raise ArtifactFormatError(f"row_offsets has {len(offsets)} entries, expected {self.num_users + 1}")
        if len(offsets) and offsets[0] != 0:
            raise ArtifactFormatError("row_offsets[0] must be 0")
        if np.any(np.diff(offsets) < 0):
            raise ArtifactFormatError("row_offsets must be non-decreasing")
        if self.nnz != len(self.col_indices):
            raise ArtifactFormatError(f"row_offsets end at {self.nnz} but there are {len(self.col_indices)} columns")
        if len(self.col_indices):
            if self.col_indices.min() < 0 or self.col_indices.max() >= self.num_items:
                raise ArtifactFormatError("column index out of range")
            # strictly increasing within rows: every non-row-start step must be positive
            steps = np.diff(self.col_indices.astype(np.int64))
            row_starts = offsets[1:-1]
            inner = np.ones(len(steps), dtype=bool)
            inner[row_starts[(row_starts > 0) & (row_starts < len(self.col_indices))] - 1] = False
            if np.any(steps[inner] <= 0):
                raise ArtifactFormatError("column indices must be strictly increasing within each row")
        if len(self.user_ids) != self.num_users or len(self.item_ids) != self.num_items:
            raise ArtifactFormatError("id maps do not match the matrix shape")
        if len(set(self.user_ids)) != self.num_users or len(set(self.item_ids)) != self.num_items:
            raise ArtifactFormatError("id maps must be bijections")


@dataclass
class EvalUser:
    """A held-out user: fold_in items feed the encoder, held_out items are ranked."""
    user_id: str
    fold_in: np.ndarray
    held_out: np.ndarray


@dataclass
class SplitDataset:
    train: InteractionDataset
    val: List[EvalUser]
    test: List[EvalUser]
