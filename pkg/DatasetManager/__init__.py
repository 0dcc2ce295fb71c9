# ./DatasetManager/__init__.py

from .types import RawInteractions, InteractionDataset, EvalUser, SplitDataset
from .parsers import parse_ratings_csv, parse_triplets_tsv
from .filtering import filter_min_counts
from .dataset import build_dataset, dataset_statistics, save_dataset, load_dataset
from .split import (split_by_user, save_eval_users, load_eval_users, save_split,
                    load_split)
from .presets import DatasetPreset, InputFormat, PRESETS

__all__ = [
    'RawInteractions',
    'InteractionDataset',
    'EvalUser',
    'SplitDataset',
    'parse_ratings_csv',
    'parse_triplets_tsv',
    'filter_min_counts',
    'build_dataset',
    'dataset_statistics',
    'save_dataset',
    'load_dataset',
    'split_by_user',
    'save_eval_users',
    'load_eval_users',
    'save_split',
    'load_split',
    'DatasetPreset',
    'InputFormat',
    'PRESETS'
]
