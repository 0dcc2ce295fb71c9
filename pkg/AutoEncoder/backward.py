# ./AutoEncoder/backward.py

from dataclasses import dataclass
from typing import Dict

import numpy as np

from AutoEncoder.forward import ALL, ForwardCache
from AutoEncoder.params import ModelParams
from utils.errors import ShapeMismatchError


@dataclass
class Gradients:
    """Row-keyed gradient slabs: row k of dW_enc_rows belongs to item enc_keys[k], and so on.

    `dense` marks full-width gradients whose keys cover every item in order.
    """
    enc_keys: np.ndarray
    dW_enc_rows: np.ndarray
    db_enc: np.ndarray
    dec_keys: np.ndarray
    dW_dec_rows: np.ndarray
    db_dec_rows: np.ndarray
    dense: bool = False

    def all_finite(self) -> bool:
        return all(np.all(np.isfinite(g)) for g in (self.dW_enc_rows, self.db_enc,
                                                    self.dW_dec_rows, self.db_dec_rows))

    def to_dense(self, params: ModelParams) -> Dict[str, np.ndarray]:
        """Scatter the slabs into parameter-shaped arrays (untouched rows are zero)."""
        enc = np.zeros_like(params.enc_weights)
        enc[self.enc_keys] = self.dW_enc_rows
        dec = np.zeros_like(params.W_dec)
        dec[self.dec_keys] = self.dW_dec_rows
        b_dec = np.zeros_like(params.b_dec)
        b_dec[self.dec_keys] = self.db_dec_rows
        return {"W_enc": enc, "b_enc": self.db_enc.copy(), "W_dec": dec, "b_dec": b_dec}


def backward(params: ModelParams, cache: ForwardCache, dlogits: np.ndarray) -> Gradients:
    """Back-propagate dlogits through decoder and encoder, touching only batch columns."""
    if dlogits.shape != cache.logits.shape:
        raise ShapeMismatchError(f"dlogits {dlogits.shape} does not match cached logits {cache.logits.shape}")
    if cache.hidden.shape[1] != params.d or cache.hidden.shape[0] != dlogits.shape[0]:
        raise ShapeMismatchError("forward cache is stale for these parameters")

    hidden = cache.hidden
    full = cache.columns is ALL
    if full:
        dec_keys = np.arange(params.num_items)
        dec_weights = params.W_dec
    else:
        dec_keys = np.asarray(cache.columns)
        dec_weights = params.W_dec[dec_keys]

    dW_dec_rows = dlogits.T @ hidden
    db_dec_rows = dlogits.sum(axis=0)

    dhidden = dlogits @ dec_weights
    dpre = dhidden * params.activation.derivative(hidden)
    db_enc = dpre.sum(axis=0)

    dropped = cache.dropped_input
    if full:
        enc_keys = dec_keys
        dW_enc_rows = dropped.T @ dpre
    else:
        touched = np.flatnonzero(np.any(dropped != 0, axis=0))
        enc_keys = dec_keys[touched]
        dW_enc_rows = dropped[:, touched].T @ dpre

    return Gradients(
        enc_keys=enc_keys,
        dW_enc_rows=dW_enc_rows,
        db_enc=db_enc,
        dec_keys=dec_keys,
        dW_dec_rows=dW_dec_rows,
        db_dec_rows=db_dec_rows,
        dense=full,
    )
