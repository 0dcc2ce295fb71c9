# ./DatasetManager/presets.py
# Dataset filtering rules for the benchmark datasets

from dataclasses import asdict, dataclass
from enum import Enum
from typing import Dict


class InputFormat(Enum):
    MOVIELENS = "movielens"
    TRIPLETS = "triplets"


@dataclass(frozen=True)
class DatasetPreset:
    name: str
    format: InputFormat
    rating_threshold: float
    min_items_per_user: int
    min_users_per_item: int
    n_val: int
    n_test: int
    epochs: int

    def to_dict(self) -> Dict:
        return {k: v.value if isinstance(v, Enum) else v for k, v in asdict(self).items()}


PRESETS: Dict[str, DatasetPreset] = {
    # ratings of 4 and above are positives; users need 5 positives
    "ml-20m": DatasetPreset("ml-20m", InputFormat.MOVIELENS, 4.0, 5, 0, 10_000, 10_000, 100),
    "msd": DatasetPreset("msd", InputFormat.TRIPLETS, 0.0, 20, 200, 50_000, 50_000, 80),
    "msd-large": DatasetPreset("msd-large", InputFormat.TRIPLETS, 0.0, 20, 50, 50_000, 50_000, 80),
}
