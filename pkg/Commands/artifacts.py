# ./Commands/artifacts.py
# Locating processed datasets and checkpoints for the commands

from pathlib import Path
from typing import List, Optional, Tuple, Union

from AutoEncoder.checkpoint import load_checkpoint
from AutoEncoder.params import ModelParams
from DatasetManager.dataset import load_dataset
from DatasetManager.split import TEST_FILE, TRAIN_FILE, VAL_FILE, load_eval_users
from DatasetManager.types import EvalUser, InteractionDataset
from utils.errors import ConfigError, ShapeMismatchError

SPLIT_FILES = {"val": VAL_FILE, "test": TEST_FILE}


def load_training_data(path: Union[str, Path]) -> Tuple[InteractionDataset, Optional[List[EvalUser]]]:
    """A preprocess directory (train set plus validation users) or a single dataset file."""
    path = Path(path)
    if path.is_dir():
        val_path = path / VAL_FILE
        val_users = load_eval_users(val_path) if val_path.exists() else None
        return load_dataset(path / TRAIN_FILE), val_users
    return load_dataset(path), None


def load_split_users(directory: Union[str, Path], split: str) -> List[EvalUser]:
    directory = Path(directory)
    if not directory.is_dir():
        raise ConfigError(f"--data must be a preprocessed directory, got {directory}")
    return load_eval_users(directory / SPLIT_FILES[split])


def load_model_for(ds: InteractionDataset, checkpoint: Union[str, Path]) -> ModelParams:
    params, _ = load_checkpoint(checkpoint)
    if params.num_items != ds.num_items:
        raise ShapeMismatchError(
            f"checkpoint {checkpoint} has {params.num_items} items but the dataset has {ds.num_items}"
        )
    return params
