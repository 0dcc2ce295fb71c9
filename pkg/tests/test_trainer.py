# ./tests/test_trainer.py

import json

import numpy as np
import pytest
from numpy.testing import assert_allclose

from conftest import make_dataset, random_rows
from AutoEncoder import init_params, load_checkpoint
from DatasetManager.types import EvalUser
from Evaluation import evaluate_split
from Optimizer import init_adam_state
from Trainer import TrainConfig, TrainMode, benchmark, fit, train_epoch, write_run_metadata
from utils.errors import ConfigError, NonFiniteError


def _cfg(**overrides) -> TrainConfig:
    values = dict(batch_size=10, epochs=2, hidden_dim=4, seed=3, prefetch=False)
    values.update(overrides)
    return TrainConfig(**values)


def test_batches_per_epoch():
    ds = make_dataset(random_rows(10, 8, 3, seed=0), 8)
    cfg = _cfg(batch_size=3)
    params = init_params(8, 4, seed=0)
    stats = train_epoch(ds, params, init_adam_state(params, cfg.adam_hyper()), cfg, epoch=0)
    assert stats.batches == 4
    assert stats.mean_sampled_input_size <= ds.num_items
    assert np.isfinite(stats.mean_loss)


def test_same_seed_same_losses(toy_dataset):
    _, first = fit(toy_dataset, _cfg(epochs=3, prefetch=True))
    _, second = fit(toy_dataset, _cfg(epochs=3, prefetch=False))
    assert [s.mean_loss for s in first] == [s.mean_loss for s in second]


def test_training_reduces_loss(block_dataset):
    _, stats = fit(block_dataset, _cfg(epochs=30, hidden_dim=8, lr=1e-2))
    assert stats[-1].mean_loss < stats[0].mean_loss


def test_zero_epochs_returns_initial_params(block_dataset):
    cfg = _cfg(epochs=0)
    params, stats = fit(block_dataset, cfg)
    initial = init_params(block_dataset.num_items, cfg.hidden_dim, cfg.seed)
    assert stats == []
    for name, array in initial.groups().items():
        assert np.array_equal(array, params.groups()[name])


def test_checkpoints_written(tmp_path, block_dataset):
    params, stats = fit(block_dataset, _cfg(epochs=10, checkpoint_every=5), out_dir=tmp_path)
    names = sorted(p.name for p in tmp_path.iterdir())
    assert names == ["checkpoint_epoch_0005.ck", "checkpoint_epoch_0010.ck", "final.ck", "run.json"]
    run = json.loads((tmp_path / "run.json").read_text())
    assert run["prng"] == "PCG64"
    assert len(run["epochs"]) == 10
    assert run["config"]["mode"] == "sampled"
    _, metadata = load_checkpoint(tmp_path / "final.ck")
    assert metadata["epochs"] == 10


def test_final_checkpoint_evaluates_like_memory(tmp_path, block_dataset):
    params, _ = fit(block_dataset, _cfg(epochs=3), out_dir=tmp_path)
    loaded, _ = load_checkpoint(tmp_path / "final.ck")
    users = [EvalUser(f"e{k}", np.array([k, k + 1]), np.array([k + 2, k + 3])) for k in range(0, 16, 4)]
    assert evaluate_split(params, users).aggregate == evaluate_split(loaded, users).aggregate


def test_validation_ndcg_recorded(block_dataset):
    users = [EvalUser("v", np.array([0, 1, 2]), np.array([3, 4]))]
    _, stats = fit(block_dataset, _cfg(epochs=2), val_users=users)
    assert all(0.0 <= s.val_ndcg_at_50 <= 1.0 for s in stats)


def test_sampled_and_full_match_when_batch_covers_all_users(block_dataset):
    cfg = dict(batch_size=block_dataset.num_users, epochs=3, dropout=0.0, dtype="float64")
    sampled, _ = fit(block_dataset, _cfg(mode=TrainMode.SAMPLED, **cfg))
    full, full_stats = fit(block_dataset, _cfg(mode=TrainMode.FULL, **cfg))
    for name, array in sampled.groups().items():
        assert_allclose(array, full.groups()[name], rtol=1e-6, atol=1e-9)
    assert all(s.mean_sampled_input_size == block_dataset.num_items for s in full_stats)


def test_full_mode_input_size_is_item_count(toy_dataset):
    _, stats = fit(toy_dataset, _cfg(mode=TrainMode.FULL, epochs=1))
    assert stats[0].mean_sampled_input_size == toy_dataset.num_items
    assert stats[0].std_sampled_input_size == 0.0


def test_slicing_keeps_batch_count(toy_dataset):
    _, stats = fit(toy_dataset, _cfg(batch_size=16, slice_rows=5, epochs=1))
    assert stats[0].batches == 3


def test_divergence_reports_position(block_dataset):
    cfg = _cfg()
    params = init_params(block_dataset.num_items, 4, seed=0)
    params.b_dec[:] = np.nan
    with pytest.raises(NonFiniteError) as e:
        train_epoch(block_dataset, params, init_adam_state(params, cfg.adam_hyper()), cfg, epoch=0)
    assert e.value.epoch == 1 and e.value.batch == 0


def test_invalid_config():
    with pytest.raises(ConfigError):
        _cfg(dropout=1.0).validate()
    with pytest.raises(ConfigError):
        _cfg(batch_size=0).validate()


def test_run_metadata(tmp_path, block_dataset):
    cfg = _cfg(epochs=1)
    _, stats = fit(block_dataset, cfg)
    write_run_metadata(tmp_path / "run.json", cfg, stats, {"total_seconds": 1.0})
    run = json.loads((tmp_path / "run.json").read_text())
    assert run["seed"] == 3
    assert run["timings"] == {"total_seconds": 1.0}
    assert run["epochs"][0]["batches"] == 5


def test_benchmark_report(block_dataset):
    report = benchmark(block_dataset, _cfg(), warmup_batches=2, timed_batches=6)
    assert report.speedup > 0
    assert report.full_input_size == block_dataset.num_items
    assert report.mean_sampled_input_size <= block_dataset.num_items


def test_benchmark_needs_timed_batches(block_dataset):
    with pytest.raises(ConfigError):
        benchmark(block_dataset, _cfg(), warmup_batches=0, timed_batches=0)
