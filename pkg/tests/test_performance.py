# ./tests/test_performance.py
# Timing checks and the real-dataset reproductions; deselect with -m "not slow and not dataset"

import time

import numpy as np
import pytest

from conftest import make_dataset
from AutoEncoder import init_params
from BatchSampler import sampled_input_size_stats
from DatasetManager import build_dataset, filter_min_counts, parse_ratings_csv, split_by_user
from Evaluation import evaluate_split
from Optimizer import init_adam_state
from Trainer import TrainConfig, benchmark, fit, train_epoch


def _synthetic(num_users, num_items, per_user, seed):
    rng = np.random.default_rng(seed)
    return make_dataset([rng.choice(num_items, size=per_user, replace=False) for _ in range(num_users)], num_items)


def _best_epoch_seconds(ds, cfg, repeats=3):
    params = init_params(ds.num_items, cfg.hidden_dim, cfg.seed)
    state = init_adam_state(params, cfg.adam_hyper())
    times = []
    for epoch in range(repeats):
        start = time.perf_counter()
        train_epoch(ds, params, state, cfg, epoch)
        times.append(time.perf_counter() - start)
    return min(times)


@pytest.mark.slow
def test_epoch_time_scales_linearly_with_interactions():
    cfg = TrainConfig(batch_size=100, hidden_dim=32, epochs=1, prefetch=False)
    small = _best_epoch_seconds(_synthetic(2000, 4000, 10, seed=0), cfg)
    large = _best_epoch_seconds(_synthetic(2000, 4000, 20, seed=0), cfg)
    assert large / small <= 2.5


@pytest.mark.slow
def test_sampled_faster_than_full_when_columns_are_few():
    ds = _synthetic(2000, 20_000, 10, seed=1)
    cfg = TrainConfig(batch_size=100, hidden_dim=64, prefetch=False)
    report = benchmark(ds, cfg, warmup_batches=2, timed_batches=10)
    assert report.mean_sampled_input_size < ds.num_items / 2
    assert report.sampled_batches_per_second > report.full_batches_per_second


@pytest.fixture(scope="module")
def ml20m_split(ml20m_path):
    raw = filter_min_counts(parse_ratings_csv(ml20m_path, 4.0), 5, 0)
    return split_by_user(build_dataset(raw), 10_000, 10_000, 0.8, seed=98765)


@pytest.mark.dataset
def test_ml20m_sampled_input_size(ml20m_split):
    stats = sampled_input_size_stats(ml20m_split.train, 500, seed=0)
    assert abs(stats["mean"] - 5085) <= 0.10 * 5085
    assert stats["std"] < 800


@pytest.mark.dataset
@pytest.mark.slow
def test_ml20m_throughput(ml20m_split):
    report = benchmark(ml20m_split.train, TrainConfig(batch_size=500), warmup_batches=3, timed_batches=20)
    assert report.speedup >= 1.8


@pytest.mark.dataset
@pytest.mark.slow
def test_ml20m_quality(ml20m_split):
    params, _ = fit(ml20m_split.train, TrainConfig(epochs=100, seed=0))
    report = evaluate_split(params, ml20m_split.test).aggregate
    assert report["recall@20"] >= 0.37
    assert report["recall@50"] >= 0.50
    assert report["ndcg@100"] >= 0.40
    untrained = evaluate_split(init_params(ml20m_split.train.num_items, 200, seed=1), ml20m_split.test).aggregate
    assert report["ndcg@100"] >= 10 * untrained["ndcg@100"]
