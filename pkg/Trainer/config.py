# ./Trainer/config.py

from dataclasses import asdict, dataclass
from enum import Enum
from typing import Dict, Optional

import numpy as np

from AutoEncoder.params import Activation
from Optimizer.adam import AdamHyper
from utils.errors import ConfigError


class TrainMode(Enum):
    SAMPLED = "sampled"
    FULL = "full"


@dataclass
class TrainConfig:
    batch_size: int = 500
    slice_rows: Optional[int] = None  # None: one slice per batch
    epochs: int = 100
    dropout: float = 0.5
    weight_decay: float = 2e-5
    lr: float = 1e-3
    hidden_dim: int = 200
    mode: TrainMode = TrainMode.SAMPLED
    seed: int = 0
    checkpoint_every: int = 0  # 0: final checkpoint only
    activation: Activation = Activation.TANH
    decay_biases: bool = False
    prefetch: bool = True
    dtype: str = "float32"

    def __post_init__(self):
        self.mode = TrainMode(self.mode)
        self.activation = Activation(self.activation)

    @property
    def effective_slice_rows(self) -> int:
        return self.slice_rows if self.slice_rows is not None else self.batch_size

    @property
    def np_dtype(self) -> np.dtype:
        return np.dtype(self.dtype)

    def validate(self) -> "TrainConfig":
        for name in ("batch_size", "hidden_dim"):
            if getattr(self, name) < 1:
                raise ConfigError(f"{name} must be >= 1, got {getattr(self, name)}")
        if self.slice_rows is not None and self.slice_rows < 1:
            raise ConfigError(f"slice_rows must be >= 1, got {self.slice_rows}")
        for name in ("epochs", "seed", "checkpoint_every"):
            if getattr(self, name) < 0:
                raise ConfigError(f"{name} must be >= 0, got {getattr(self, name)}")
        if not 0.0 <= self.dropout < 1.0:
            raise ConfigError(f"dropout must lie in [0, 1), got {self.dropout}")
        if self.weight_decay < 0:
            raise ConfigError(f"weight_decay must be >= 0, got {self.weight_decay}")
        if self.lr <= 0:
            raise ConfigError(f"lr must be > 0, got {self.lr}")
        if self.dtype not in ("float32", "float64"):
            raise ConfigError(f"dtype must be float32 or float64, got {self.dtype!r}")
        return self

    def adam_hyper(self) -> AdamHyper:
        return AdamHyper(lr=self.lr, weight_decay=self.weight_decay, decay_biases=self.decay_biases)

    def to_dict(self) -> Dict:
        result = asdict(self)
        result["mode"] = self.mode.value
        result["activation"] = self.activation.value
        return result


@dataclass
class EpochStats:
    epoch: int  # 1-based
    mean_loss: float
    batches: int
    mean_sampled_input_size: float
    std_sampled_input_size: float
    wall_seconds: float
    batches_per_second: float
    val_ndcg_at_50: Optional[float] = None

    def to_dict(self) -> Dict:
        return asdict(self)
