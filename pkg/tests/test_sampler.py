# ./tests/test_sampler.py

import threading
from math import comb

import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import make_dataset, random_rows
from BatchSampler import (compare_inclusion_probabilities, downsample_columns, full_width_batch, gather_batch,
                          inclusion_probability_exact, inclusion_probability_first_order, iterate_epoch_batches,
                          plan_epoch, prefetch, prepare_batch, sampled_input_size_stats,
                          simulate_inclusion_frequency, slice_batch)
from BatchSampler.batches import SampledBatch
from utils.errors import ConfigError


# Epoch plans

def test_plan_batch_sizes():
    plan = plan_epoch(10, 3, seed=0, epoch=0)
    assert plan.num_batches == 4
    assert [len(b) for b in plan.batches()] == [3, 3, 3, 1]
    assert sorted(plan.permutation) == list(range(10))


def test_plan_deterministic():
    assert np.array_equal(plan_epoch(100, 7, 5, 2).permutation, plan_epoch(100, 7, 5, 2).permutation)


def test_plan_epochs_differ():
    assert not np.array_equal(plan_epoch(10_000, 500, 5, 0).permutation, plan_epoch(10_000, 500, 5, 1).permutation)


def test_plan_zero_batch_size():
    with pytest.raises(ConfigError):
        plan_epoch(10, 0, 0, 0)


# Gathering and downsampling

def test_gather_single_user():
    ds = make_dataset([[0], [1], [2], [2, 5]], 6)
    b = gather_batch(ds, [3])
    assert b.entries.tolist() == [[0, 2], [0, 5]]


def test_gather_empty():
    ds = make_dataset([[0]], 1)
    b = gather_batch(ds, [])
    assert b.num_rows == 0 and len(b.cols) == 0


def test_gather_out_of_range():
    ds = make_dataset([[0]], 1)
    with pytest.raises(IndexError):
        gather_batch(ds, [1])


@given(st.integers(0, 10_000), st.lists(st.integers(0, 29), min_size=1, max_size=12, unique=True))
def test_gather_matches_row_scan(seed, users):
    ds = make_dataset(random_rows(30, 20, 5, seed), 20)
    b = gather_batch(ds, users)
    expected = [(r, int(c)) for r, u in enumerate(users) for c in ds.row(u)]
    assert [tuple(e) for e in b.entries.tolist()] == expected


def test_downsample_example():
    ds = make_dataset([[2, 5], [5, 9]], 10)
    sb = downsample_columns(gather_batch(ds, [0, 1]))
    assert sb.columns.tolist() == [2, 5, 9]
    assert sb.dense.tolist() == [[1, 1, 0], [0, 1, 1]]
    assert sb.col_to_local == {2: 0, 5: 1, 9: 2}


def test_downsample_empty():
    ds = make_dataset([[0]], 1)
    sb = downsample_columns(gather_batch(ds, []))
    assert sb.size == 0 and sb.dense.shape == (0, 0)


def test_downsample_all_users_covers_every_interacted_item():
    ds = make_dataset([[0, 3], [3], [5]], 7)
    sb = downsample_columns(gather_batch(ds, range(3)))
    assert sb.columns.tolist() == [0, 3, 5]


@given(st.integers(0, 10_000), st.integers(1, 30))
def test_downsample_reconstructs_rows(seed, m):
    ds = make_dataset(random_rows(30, 20, 5, seed), 20)
    users = np.random.default_rng(seed).permutation(30)[:m]
    sb = downsample_columns(gather_batch(ds, users))
    assert np.all(np.diff(sb.columns) > 0)
    assert np.all(sb.dense.sum(axis=0) >= 1)
    for r, u in enumerate(users):
        assert sb.columns[np.flatnonzero(sb.dense[r])].tolist() == ds.row(u).tolist()
    shuffled = downsample_columns(gather_batch(ds, users[::-1]))
    assert np.array_equal(shuffled.columns, sb.columns)


def test_full_width_batch():
    ds = make_dataset([[1], [0, 2]], 4)
    sb = full_width_batch(ds, [1, 0])
    assert sb.full_width
    assert sb.dense.tolist() == [[1, 0, 1, 0], [0, 1, 0, 0]]
    assert sb.columns.tolist() == [0, 1, 2, 3]


# Slicing

def _sampled(rows: int) -> SampledBatch:
    return SampledBatch(columns=np.arange(4), dense=np.ones((rows, 4), dtype=np.float32),
                        user_rows=np.arange(rows))


def test_slice_shares_columns():
    sb = _sampled(500)
    slices = slice_batch(sb, 100)
    assert len(slices) == 5
    assert all(s.columns is sb.columns for s in slices)


def test_slice_identity():
    sb = _sampled(7)
    assert slice_batch(sb, 7)[0] is sb
    assert slice_batch(sb, 50)[0] is sb


def test_slice_ragged():
    sb = _sampled(7)
    slices = slice_batch(sb, 3)
    assert [s.num_rows for s in slices] == [3, 3, 1]
    assert np.array_equal(np.vstack([s.dense for s in slices]), sb.dense)


def test_prepare_batch_slices(toy_dataset):
    slices = prepare_batch(toy_dataset, np.arange(10), slice_rows=4)
    assert [s.num_rows for s in slices] == [4, 4, 2]


def test_iterate_epoch_batches_in_order(toy_dataset):
    plan = plan_epoch(toy_dataset.num_users, 7, seed=1, epoch=0)
    seen = list(iterate_epoch_batches(toy_dataset, plan, slice_rows=7))
    assert [index for index, _, _ in seen] == list(range(plan.num_batches))
    for index, slices, size in seen:
        assert np.array_equal(slices[0].user_rows, plan.batch(index))
        assert size == slices[0].size


def test_input_size_stats(toy_dataset):
    stats = sampled_input_size_stats(toy_dataset, toy_dataset.num_users, seed=0)
    assert stats["batches"] == 1
    assert stats["mean"] == toy_dataset.num_items
    assert stats["std"] == 0.0


# Prefetching

def test_prefetch_preserves_order():
    assert list(prefetch(range(20), lambda x: x * x)) == [x * x for x in range(20)]
    assert list(prefetch(range(20), lambda x: x * x, enabled=False)) == [x * x for x in range(20)]
    assert list(prefetch([], lambda x: x)) == []


def test_prefetch_runs_on_worker_thread():
    names = list(prefetch(range(3), lambda _: threading.current_thread().name))
    assert all(name.startswith("batch-prefetch") for name in names)


def test_prefetch_reraises_in_consumer():
    def prepare(x):
        if x == 2:
            raise ValueError("boom")
        return x

    received = []
    with pytest.raises(ValueError, match="boom"):
        for value in prefetch(range(5), prepare):
            received.append(value)
    assert received == [0, 1]


# Inclusion probability

def test_first_order_formula_examples():
    assert inclusion_probability_first_order(5, 1000, 100) == 0.5
    assert inclusion_probability_first_order(50, 1000, 100) == 1.0
    assert inclusion_probability_first_order(0, 1000, 100) == 0.0


def test_exact_formula_examples():
    assert inclusion_probability_exact(2, 10, 5) == pytest.approx(1 - 35 / 126, rel=1e-12)
    assert inclusion_probability_exact(0, 10, 5) == 0.0
    assert inclusion_probability_exact(9, 10, 2) == 1.0


@given(st.integers(2, 40).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, n - 1), st.integers(1, n))))
def test_exact_matches_binomials(args):
    n, c, m = args
    expected = 1 - comb(n - 1 - c, m - 1) / comb(n - 1, m - 1)
    assert inclusion_probability_exact(c, n, m) == pytest.approx(expected, abs=1e-12)


def test_exact_rejects_too_many_users():
    with pytest.raises(ConfigError):
        inclusion_probability_exact(10, 10, 5)


def test_monte_carlo_matches_exact():
    n, m, c, epochs = 200, 20, 3, 20_000
    frequency = simulate_inclusion_frequency(n, m, c, epochs, seed=7)
    exact = inclusion_probability_exact(c, n, m)
    standard_error = np.sqrt(exact * (1 - exact) / epochs)
    assert abs(frequency - exact) < 4 * standard_error


@pytest.mark.parametrize("m", [50, 100, 250, 500])
def test_first_order_formula_close_in_small_count_regime(m):
    n_users = 5000
    n_batches = -(-n_users // m)
    counts = [c for c in range(1, int(0.15 * n_batches) + 1)]
    for row in compare_inclusion_probabilities(n_users, m, counts):
        assert row["relative_error"] < 0.10, row


def test_first_order_formula_drifts_at_upper_end_of_regime():
    # |U_i| = 0.2 N with m = 50: the first-order estimate is more than 10% off
    row = compare_inclusion_probabilities(5000, 50, [20])[0]
    assert row["first_order"] > row["exact"]
    assert row["relative_error"] > 0.10
