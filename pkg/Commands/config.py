# ./Commands/config.py
# CLI-wide configuration: dataclass defaults < dataset preset < config file < flags

import json
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path
from typing import Any, Dict, List, Optional, Union, get_args, get_origin, get_type_hints

from dotenv import dotenv_values

from AutoEncoder.params import Activation
from DatasetManager.presets import PRESETS
from Evaluation.protocol import EvalConfig
from Trainer.config import TrainConfig, TrainMode
from utils.errors import ConfigError

# Keys handled by main.py itself, never part of CliConfig
CONTROL_KEYS = ("command", "config", "log_level")


@dataclass
class CliConfig:
    # dataset
    data: Optional[str] = None
    format: str = "movielens"
    preset: Optional[str] = None
    rating_threshold: float = 4.0
    min_user_items: int = 5
    min_item_users: int = 0
    n_val: int = 10_000
    n_test: int = 10_000
    fold_in_ratio: float = 0.8
    # training
    batch_size: int = 500
    slice_rows: Optional[int] = None
    epochs: int = 100
    dropout: float = 0.5
    weight_decay: float = 2e-5
    lr: float = 1e-3
    hidden_dim: int = 200
    mode: str = "sampled"
    seed: int = 0
    checkpoint_every: int = 0
    activation: str = "tanh"
    decay_biases: bool = False
    no_prefetch: bool = False
    # evaluation
    k: List[int] = field(default_factory=lambda: [20, 50, 100])
    recall_normalization: str = "min"
    split: str = "test"
    per_user: bool = False
    # artifacts
    checkpoint: Optional[str] = None
    out: Optional[str] = None
    history: Optional[str] = None
    baseline: Optional[str] = None
    candidate: Optional[str] = None
    # benchmark
    warmup_batches: int = 5
    timed_batches: int = 20

    def to_dict(self) -> Dict:
        return asdict(self)

    def require(self, *names: str) -> None:
        missing = [f"--{name.replace('_', '-')}" for name in names if getattr(self, name) is None]
        if missing:
            raise ConfigError(f"missing required option(s): {', '.join(missing)}")

    def train_config(self) -> TrainConfig:
        try:
            cfg = TrainConfig(
                batch_size=self.batch_size,
                slice_rows=self.slice_rows,
                epochs=self.epochs,
                dropout=self.dropout,
                weight_decay=self.weight_decay,
                lr=self.lr,
                hidden_dim=self.hidden_dim,
                mode=TrainMode(self.mode),
                seed=self.seed,
                checkpoint_every=self.checkpoint_every,
                activation=Activation(self.activation),
                decay_biases=self.decay_biases,
                prefetch=not self.no_prefetch,
            )
        except ValueError as e:
            raise ConfigError(str(e)) from e
        return cfg.validate()

    def eval_config(self) -> EvalConfig:
        return EvalConfig(ks=list(self.k), recall_normalization=self.recall_normalization).validate()

    def validate(self) -> "CliConfig":
        if self.format not in ("movielens", "triplets"):
            raise ConfigError(f"--format must be movielens or triplets, got {self.format!r}")
        if self.preset is not None and self.preset not in PRESETS:
            raise ConfigError(f"unknown preset {self.preset!r}; choose from {sorted(PRESETS)}")
        if self.split not in ("val", "test"):
            raise ConfigError(f"--split must be val or test, got {self.split!r}")
        if self.min_user_items < 0 or self.min_item_users < 0 or self.n_val < 0 or self.n_test < 0:
            raise ConfigError("counts and thresholds must be non-negative")
        if not 0.0 < self.fold_in_ratio < 1.0:
            raise ConfigError(f"--fold-in-ratio must lie in (0, 1), got {self.fold_in_ratio}")
        if self.timed_batches < 1 or self.warmup_batches < 0:
            raise ConfigError("--timed-batches must be >= 1 and --warmup-batches >= 0")
        self.train_config()
        self.eval_config()
        return self


_FIELD_TYPES = get_type_hints(CliConfig)
_FIELD_NAMES = {f.name for f in fields(CliConfig)}


def _parse_bool(name: str, value: Any) -> bool:
    if isinstance(value, bool):
        return value
    text = str(value).strip().lower()
    if text in ("1", "true", "yes", "on"):
        return True
    if text in ("0", "false", "no", "off", ""):
        return False
    raise ConfigError(f"{name}: expected a boolean, got {value!r}")


def _coerce(name: str, value: Any) -> Any:
    """Convert a config-file value (text or JSON) to the field's type."""
    hint = _FIELD_TYPES[name]
    optional = get_origin(hint) is Union and type(None) in get_args(hint)
    if optional:
        if value is None or (isinstance(value, str) and value.strip().lower() in ("", "none", "null")):
            return None
        hint = next(arg for arg in get_args(hint) if arg is not type(None))
    try:
        if hint is bool:
            return _parse_bool(name, value)
        if get_origin(hint) in (list, List):
            items = value if isinstance(value, list) else str(value).split(",")
            return [int(item) for item in items if str(item).strip()]
        return hint(value)
    except (TypeError, ValueError) as e:
        raise ConfigError(f"{name}: cannot interpret {value!r} as {getattr(hint, '__name__', hint)}") from e


def read_config_file(path: Union[str, Path]) -> Dict[str, Any]:
    """Flat key=value file, or a JSON object when the suffix is .json."""
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"config file {path} does not exist")
    if path.suffix == ".json":
        try:
            with open(path) as f:
                values = json.load(f)
        except json.JSONDecodeError as e:
            raise ConfigError(f"{path}: invalid JSON: {e}") from e
        if not isinstance(values, dict):
            raise ConfigError(f"{path}: expected a JSON object")
    else:
        values = dotenv_values(path)
    return {str(key).strip().replace("-", "_"): value for key, value in values.items()}


def _check_keys(values: Dict[str, Any], source: str) -> None:
    unknown = sorted(set(values) - _FIELD_NAMES)
    if unknown:
        raise ConfigError(f"unknown configuration key(s) in {source}: {', '.join(unknown)}")


def preset_values(name: str) -> Dict[str, Any]:
    if name not in PRESETS:
        raise ConfigError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}")
    preset = PRESETS[name]
    return {
        "format": preset.format.value,
        "rating_threshold": preset.rating_threshold,
        "min_user_items": preset.min_items_per_user,
        "min_item_users": preset.min_users_per_item,
        "n_val": preset.n_val,
        "n_test": preset.n_test,
        "epochs": preset.epochs,
    }


def load_cli_config(flags: Dict[str, Any], config_path: Optional[Union[str, Path]] = None) -> CliConfig:
    """Merge the configuration layers and validate the result before any work starts."""
    flags = {k: v for k, v in flags.items() if k not in CONTROL_KEYS}
    _check_keys(flags, "command-line flags")

    file_values: Dict[str, Any] = {}
    if config_path is not None:
        raw = read_config_file(config_path)
        _check_keys(raw, str(config_path))
        file_values = {name: _coerce(name, value) for name, value in raw.items()}

    merged: Dict[str, Any] = {}
    preset = flags.get("preset", file_values.get("preset"))
    if preset is not None:
        merged.update(preset_values(preset))
    merged.update(file_values)
    merged.update(flags)
    return CliConfig(**merged).validate()
