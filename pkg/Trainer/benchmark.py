# ./Trainer/benchmark.py
# Throughput of sampled vs full-output training over one shared batch sequence

import itertools
import time
from dataclasses import asdict, dataclass, replace
from typing import Dict, Iterator, List

import numpy as np

from AutoEncoder.params import ModelParams, init_params
from BatchSampler.batches import prepare_batch, sampled_input_size_stats
from BatchSampler.epoch import epoch_rng, plan_epoch
from DatasetManager.types import InteractionDataset
from Optimizer.adam import init_adam_state
from Trainer.config import TrainConfig, TrainMode
from Trainer.loop import DROPOUT_STREAM, train_step
from utils.errors import ConfigError
from utils.logger import info


@dataclass
class BenchmarkReport:
    batch_size: int
    warmup_batches: int
    timed_batches: int
    sampled_batches_per_second: float
    full_batches_per_second: float
    speedup: float
    mean_sampled_input_size: float
    std_sampled_input_size: float
    full_input_size: int

    def to_dict(self) -> Dict:
        return asdict(self)


def _user_batches(num_users: int, m: int, seed: int) -> Iterator[np.ndarray]:
    """Consecutive epoch plans chained together."""
    for epoch in itertools.count():
        yield from plan_epoch(num_users, m, seed, epoch).batches()


def _time_mode(ds: InteractionDataset, initial: ModelParams, cfg: TrainConfig, batches: List[np.ndarray],
               warmup_batches: int) -> float:
    params = initial.copy()
    state = init_adam_state(params, cfg.adam_hyper())
    rng = epoch_rng(cfg.seed, 0, stream=DROPOUT_STREAM)
    full_width = cfg.mode is TrainMode.FULL
    start = time.perf_counter()
    for index, users in enumerate(batches):
        if index == warmup_batches:
            start = time.perf_counter()
        for sb in prepare_batch(ds, users, cfg.effective_slice_rows, full_width=full_width, dtype=cfg.np_dtype):
            train_step(params, state, sb, cfg, rng)
    elapsed = time.perf_counter() - start
    timed = len(batches) - warmup_batches
    return timed / elapsed if elapsed > 0 else float("inf")


def benchmark(ds: InteractionDataset, cfg: TrainConfig, warmup_batches: int, timed_batches: int) -> BenchmarkReport:
    """Batches/second of SAMPLED and FULL training from identical initial parameters."""
    cfg.validate()
    if timed_batches < 1:
        raise ConfigError(f"timed_batches must be >= 1, got {timed_batches}")
    if warmup_batches < 0:
        raise ConfigError(f"warmup_batches must be >= 0, got {warmup_batches}")
    if ds.num_users == 0:
        raise ConfigError("cannot benchmark on a dataset without users")

    batches = list(itertools.islice(_user_batches(ds.num_users, cfg.batch_size, cfg.seed),
                                    warmup_batches + timed_batches))
    initial = init_params(ds.num_items, cfg.hidden_dim, cfg.seed, activation=cfg.activation, dtype=cfg.np_dtype)

    rates = {}
    for mode in (TrainMode.SAMPLED, TrainMode.FULL):
        rates[mode] = _time_mode(ds, initial, replace(cfg, mode=mode), batches, warmup_batches)
        info(f"Benchmark {mode.value}: {rates[mode]:.3f} batches/s")

    sizes = sampled_input_size_stats(ds, cfg.batch_size, cfg.seed)
    report = BenchmarkReport(
        batch_size=cfg.batch_size,
        warmup_batches=warmup_batches,
        timed_batches=timed_batches,
        sampled_batches_per_second=rates[TrainMode.SAMPLED],
        full_batches_per_second=rates[TrainMode.FULL],
        speedup=rates[TrainMode.SAMPLED] / rates[TrainMode.FULL],
        mean_sampled_input_size=sizes["mean"],
        std_sampled_input_size=sizes["std"],
        full_input_size=ds.num_items,
    )
    info(f"Speed-up {report.speedup:.2f}x, sampled input size {report.mean_sampled_input_size:.0f}"
         f"±{report.std_sampled_input_size:.0f} of {ds.num_items} items")
    return report
