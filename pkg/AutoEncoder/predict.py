# ./AutoEncoder/predict.py

from typing import Sequence

import numpy as np
import scipy.sparse as sp

from AutoEncoder.params import ModelParams
from utils.errors import InvalidInputError


def fold_in_matrix(fold_ins: Sequence[np.ndarray], num_items: int, dtype=np.float32) -> sp.csr_matrix:
    """Binary CSR matrix with one row per fold-in item list."""
    lengths = np.array([len(f) for f in fold_ins], dtype=np.int64)
    if np.any(lengths == 0):
        raise InvalidInputError("fold-in item lists must be non-empty")
    cols = np.concatenate([np.asarray(f, dtype=np.int64) for f in fold_ins]) if len(fold_ins) else np.empty(0, np.int64)
    if len(cols) and (cols.min() < 0 or cols.max() >= num_items):
        raise InvalidInputError(f"fold-in item index out of range [0, {num_items})")
    offsets = np.zeros(len(fold_ins) + 1, dtype=np.int64)
    np.cumsum(lengths, out=offsets[1:])
    return sp.csr_matrix((np.ones(len(cols), dtype=dtype), cols, offsets), shape=(len(fold_ins), num_items))


def predict_scores_batch(params: ModelParams, fold_ins: Sequence[np.ndarray]) -> np.ndarray:
    """Scores over every item for each fold-in list; the fold-in items themselves get -inf."""
    X = fold_in_matrix(fold_ins, params.num_items, dtype=params.dtype)
    pre = np.asarray(X @ params.enc_weights) + params.b_enc
    hidden = params.activation.apply(pre)
    scores = hidden @ params.W_dec.T + params.b_dec
    rows = np.repeat(np.arange(X.shape[0]), np.diff(X.indptr))
    scores[rows, X.indices] = -np.inf
    return scores


def predict_scores(params: ModelParams, fold_in: np.ndarray) -> np.ndarray:
    """Encode a binary fold-in vector without dropout, decode every item, mask known items."""
    if len(fold_in) == 0:
        raise InvalidInputError("fold_in must be non-empty")
    return predict_scores_batch(params, [fold_in])[0]
