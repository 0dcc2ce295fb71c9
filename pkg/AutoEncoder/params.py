# ./AutoEncoder/params.py

from dataclasses import dataclass
from enum import Enum
from typing import Callable, Dict

import numpy as np
from scipy.special import expit

from utils.errors import InvalidInputError


class Activation(Enum):
    TANH = "tanh"
    SIGMOID = "sigmoid"
    RELU = "relu"

    def apply(self, pre: np.ndarray) -> np.ndarray:
        return _FORWARD[self](pre)

    def derivative(self, hidden: np.ndarray) -> np.ndarray:
        """d activation / d pre-activation, written in terms of the activation output."""
        return _DERIVATIVE[self](hidden)


_FORWARD: Dict[Activation, Callable[[np.ndarray], np.ndarray]] = {
    Activation.TANH: np.tanh,
    Activation.SIGMOID: expit,
    Activation.RELU: lambda pre: np.maximum(pre, 0),
}

_DERIVATIVE: Dict[Activation, Callable[[np.ndarray], np.ndarray]] = {
    Activation.TANH: lambda h: 1 - h * h,
    Activation.SIGMOID: lambda h: h * (1 - h),
    Activation.RELU: lambda h: (h > 0).astype(h.dtype),
}


@dataclass
class ModelParams:
    """Encoder (W_enc, b_enc) and decoder (W_dec, b_dec) of the autoencoder.

    The encoder matrix is stored item-major (|I| x d) so that a sampled batch
    reads and updates whole rows; ``W_enc`` exposes the d x |I| view.
    """
    enc_weights: np.ndarray
    b_enc: np.ndarray
    W_dec: np.ndarray
    b_dec: np.ndarray
    activation: Activation = Activation.TANH

    @property
    def W_enc(self) -> np.ndarray:
        return self.enc_weights.T

    @property
    def d(self) -> int:
        return self.b_enc.shape[0]

    @property
    def num_items(self) -> int:
        return self.b_dec.shape[0]

    @property
    def dtype(self) -> np.dtype:
        return self.enc_weights.dtype

    def groups(self) -> Dict[str, np.ndarray]:
        """Parameter arrays by optimizer group name."""
        return {"W_enc": self.enc_weights, "b_enc": self.b_enc, "W_dec": self.W_dec, "b_dec": self.b_dec}

    def copy(self) -> "ModelParams":
        return ModelParams(self.enc_weights.copy(), self.b_enc.copy(), self.W_dec.copy(),
                           self.b_dec.copy(), self.activation)

    def astype(self, dtype) -> "ModelParams":
        return ModelParams(self.enc_weights.astype(dtype), self.b_enc.astype(dtype),
                           self.W_dec.astype(dtype), self.b_dec.astype(dtype), self.activation)

    def all_finite(self) -> bool:
        return all(np.all(np.isfinite(p)) for p in self.groups().values())


def init_params(num_items: int, d: int, seed: int, activation: Activation = Activation.TANH,
                dtype=np.float32) -> ModelParams:
    """Glorot-uniform weights, zero biases, deterministic per seed."""
    if d < 1 or num_items < 1:
        raise InvalidInputError(f"d and num_items must be >= 1, got d={d}, num_items={num_items}")
    rng = np.random.default_rng(seed)
    limit = np.sqrt(6.0 / (num_items + d))
    enc_weights = rng.uniform(-limit, limit, size=(num_items, d)).astype(dtype)
    W_dec = rng.uniform(-limit, limit, size=(num_items, d)).astype(dtype)
    return ModelParams(
        enc_weights=enc_weights,
        b_enc=np.zeros(d, dtype=dtype),
        W_dec=W_dec,
        b_dec=np.zeros(num_items, dtype=dtype),
        activation=Activation(activation),
    )
