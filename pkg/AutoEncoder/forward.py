# ./AutoEncoder/forward.py
# Input corruption, restricted encode/decode and the logistic reconstruction loss

from dataclasses import dataclass
from enum import Enum
from typing import Tuple, Union

import numpy as np
from scipy.special import expit

from AutoEncoder.params import ModelParams
from BatchSampler.batches import SampledBatch
from utils.errors import InvalidInputError, ShapeMismatchError


class ColumnSet(Enum):
    ALL = "all"


# Decode / encode against every item
ALL = ColumnSet.ALL

Columns = Union[np.ndarray, ColumnSet]


@dataclass
class ForwardCache:
    dropped_input: np.ndarray
    hidden: np.ndarray
    logits: np.ndarray
    columns: Columns


def apply_input_dropout(batch: Union[SampledBatch, np.ndarray], p: float,
                        rng: np.random.Generator) -> np.ndarray:
    """Inverted dropout on the non-zero entries: zero with probability p, scale survivors by 1/(1-p)."""
    if not 0.0 <= p < 1.0:
        raise InvalidInputError(f"dropout probability must lie in [0, 1), got {p}")
    dense = batch.dense if isinstance(batch, SampledBatch) else np.asarray(batch)
    if p == 0.0:
        return dense.copy()
    rows, cols = np.nonzero(dense)
    keep = rng.random(len(rows)) >= p
    out = np.zeros_like(dense)
    rows, cols = rows[keep], cols[keep]
    out[rows, cols] = dense[rows, cols] * dense.dtype.type(1.0 / (1.0 - p))
    return out


def _width(params: ModelParams, columns: Columns) -> int:
    return params.num_items if columns is ALL else len(columns)


def encode(params: ModelParams, input: np.ndarray, columns: Columns) -> np.ndarray:
    """hidden = act(input @ W_enc[:, columns].T + b_enc), reading only the referenced columns."""
    if input.ndim != 2 or input.shape[1] != _width(params, columns):
        raise ShapeMismatchError(
            f"encoder input of shape {input.shape} does not match {_width(params, columns)} columns"
        )
    weights = params.enc_weights if columns is ALL else params.enc_weights[columns]
    pre = input.astype(params.dtype, copy=False) @ weights
    pre += params.b_enc
    return params.activation.apply(pre)


def decode(params: ModelParams, hidden: np.ndarray, columns: Columns) -> np.ndarray:
    """Pre-sigmoid logits for `columns` (or every item with ALL)."""
    if hidden.ndim != 2 or hidden.shape[1] != params.d:
        raise ShapeMismatchError(f"hidden of shape {hidden.shape} does not match d={params.d}")
    if columns is ALL:
        return hidden @ params.W_dec.T + params.b_dec
    return hidden @ params.W_dec[columns].T + params.b_dec[columns]


def forward(params: ModelParams, dropped: np.ndarray, columns: Columns) -> Tuple[np.ndarray, ForwardCache]:
    hidden = encode(params, dropped, columns)
    logits = decode(params, hidden, columns)
    return logits, ForwardCache(dropped_input=dropped, hidden=hidden, logits=logits, columns=columns)


def bce_loss_and_grad(logits: np.ndarray, targets: np.ndarray) -> Tuple[float, np.ndarray]:
    """Logistic negative log-likelihood, summed over items and averaged over users.

    Uses max(l, 0) - l*x + log(1 + exp(-|l|)), finite for every finite logit.
    """
    if logits.shape != targets.shape:
        raise ShapeMismatchError(f"logits {logits.shape} and targets {targets.shape} differ")
    n_rows = logits.shape[0]
    if n_rows == 0:
        return 0.0, np.zeros_like(logits)
    entries = np.maximum(logits, 0) - logits * targets + np.log1p(np.exp(-np.abs(logits)))
    loss = float(np.sum(entries, dtype=np.float64)) / n_rows
    dlogits = (expit(logits) - targets) / logits.dtype.type(n_rows)
    return loss, dlogits.astype(logits.dtype, copy=False)
