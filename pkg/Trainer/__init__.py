# ./Trainer/__init__.py

from .config import TrainConfig, TrainMode, EpochStats
from .loop import train_step, train_epoch, fit, write_run_metadata, FINAL_CHECKPOINT, RUN_METADATA
from .benchmark import BenchmarkReport, benchmark

__all__ = [
    'TrainConfig',
    'TrainMode',
    'EpochStats',
    'train_step',
    'train_epoch',
    'fit',
    'write_run_metadata',
    'FINAL_CHECKPOINT',
    'RUN_METADATA',
    'BenchmarkReport',
    'benchmark'
]
