# ./Commands/recommend.py

from pathlib import Path
from typing import List

import numpy as np

from AutoEncoder.predict import predict_scores
from Commands.artifacts import load_model_for, load_training_data
from Commands.config import CliConfig
from Evaluation.metrics import rank_items
from utils.errors import ConfigError, InvalidInputError
from utils.logger import warning


def read_history(path) -> List[str]:
    """One external item id per line; blank lines ignored."""
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"history file {path} does not exist")
    with open(path) as f:
        return [line.strip() for line in f if line.strip()]


def cmd_recommend(cfg: CliConfig) -> List[str]:
    """Print the top-K external item ids for a user history (K is the first --k)."""
    cfg.require("data", "checkpoint", "history")
    ds, _ = load_training_data(cfg.data)
    params = load_model_for(ds, cfg.checkpoint)

    history = read_history(cfg.history)
    id_map = ds.item_id_map
    unknown = [item for item in history if item not in id_map]
    if unknown:
        warning(f"Skipping {len(unknown)} unknown item id(s): {', '.join(unknown)}")
    known = sorted({id_map[item] for item in history if item in id_map})
    if not known:
        raise InvalidInputError("history contains no item known to the model")

    k = cfg.k[0]
    scores = predict_scores(params, np.asarray(known, dtype=np.int64))
    ranked = rank_items(scores)[:min(k, ds.num_items - len(known))]
    recommended = [ds.item_ids[i] for i in ranked]
    for item in recommended:
        print(item)
    return recommended
