# ./tests/test_evaluation.py

import json
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from AutoEncoder import init_params, predict_scores
from DatasetManager.types import EvalUser
from Evaluation import EvalConfig, compare_reports, evaluate_split, ndcg_at_k, rank_items, recall_at_k, write_report
from utils.errors import ConfigError, InvalidInputError


def _brute_recall(ranked, held_out, k):
    hits = sum(1 for item in ranked[:k] if item in set(held_out))
    return hits / min(k, len(held_out))


def _brute_ndcg(ranked, held_out, k):
    dcg = sum(1 / math.log2(r + 2) for r, item in enumerate(ranked[:k]) if item in set(held_out))
    idcg = sum(1 / math.log2(r + 2) for r in range(min(k, len(held_out))))
    return dcg / idcg


def _random_instance(rng):
    n_items = int(rng.integers(2, 12))
    ranked = list(rng.permutation(n_items))
    held_out = list(rng.choice(n_items, size=rng.integers(1, n_items + 1), replace=False))
    k = int(rng.integers(1, n_items + 3))
    return ranked, held_out, k


def test_recall_examples():
    assert recall_at_k([0, 1, 2], [1, 0], 2) == 1.0
    assert recall_at_k([0, 1, 2], [2], 2) == 0.0
    assert recall_at_k(["a", "c", "b"], ["a", "b"], 2) == 0.5


def test_recall_held_out_normalization():
    assert recall_at_k([0, 1, 2, 3], [0, 5, 6, 7], 2, normalization="held_out") == 0.25
    assert recall_at_k([0, 1, 2, 3], [0, 5, 6, 7], 2) == 0.5


def test_ndcg_examples():
    assert ndcg_at_k([3, 1, 2], [3], 3) == 1.0
    assert ndcg_at_k([3, 1, 2], [7], 3) == 0.0
    assert ndcg_at_k(["a", "c"], ["a", "b"], 2) == pytest.approx(1 / (1 + 1 / math.log2(3)), abs=1e-4)
    assert ndcg_at_k(["a", "c"], ["a", "b"], 2) == pytest.approx(0.6131, abs=1e-4)


def test_empty_held_out():
    with pytest.raises(InvalidInputError):
        recall_at_k([0, 1], [], 1)
    with pytest.raises(InvalidInputError):
        ndcg_at_k([0, 1], [], 1)


def test_metrics_match_brute_force():
    rng = np.random.default_rng(0)
    for _ in range(1000):
        ranked, held_out, k = _random_instance(rng)
        recall = recall_at_k(ranked, held_out, k)
        ndcg = ndcg_at_k(ranked, held_out, k)
        assert recall == pytest.approx(_brute_recall(ranked, held_out, k), abs=1e-12)
        assert ndcg == pytest.approx(_brute_ndcg(ranked, held_out, k), abs=1e-12)
        assert 0.0 <= recall <= 1.0 and 0.0 <= ndcg <= 1.0 + 1e-12


def test_moving_a_hit_earlier_never_hurts():
    rng = np.random.default_rng(1)
    for _ in range(1000):
        ranked, held_out, k = _random_instance(rng)
        positions = [r for r, item in enumerate(ranked) if item in set(held_out) and r > 0]
        if not positions:
            continue
        r = int(rng.choice(positions))
        moved = list(ranked)
        moved[r - 1], moved[r] = moved[r], moved[r - 1]
        assert recall_at_k(moved, held_out, k) >= recall_at_k(ranked, held_out, k) - 1e-12
        assert ndcg_at_k(moved, held_out, k) >= ndcg_at_k(ranked, held_out, k) - 1e-12


def test_rank_items_ties_by_index():
    assert rank_items(np.array([0.5, 0.9, 0.5, -np.inf, 0.9])).tolist() == [1, 4, 0, 2, 3]


@given(st.lists(st.integers(-1000, 1000), min_size=1, max_size=30))
def test_rank_invariant_under_increasing_transform(values):
    scores = np.array(values, dtype=np.float64)
    assert np.array_equal(rank_items(scores), rank_items(np.exp(scores / 500) * 3 + 1))


# Evaluation protocol

def _users():
    return [
        EvalUser("a", np.array([0, 1]), np.array([2, 3])),
        EvalUser("b", np.array([4]), np.array([5, 6, 7])),
        EvalUser("c", np.array([2, 8, 9]), np.array([0])),
    ]


def test_evaluate_matches_independent_loop():
    params = init_params(12, 3, seed=1)
    report = evaluate_split(params, _users(), config=EvalConfig(ks=[3, 5], batch_users=2))
    for i, user in enumerate(_users()):
        ranked = list(np.argsort(-predict_scores(params, user.fold_in), kind="stable"))
        for k in (3, 5, 20, 50):
            assert report.per_user[f"recall@{k}"][i] == pytest.approx(_brute_recall(ranked, list(user.held_out), k))
        for k in (3, 5, 50, 100):
            assert report.per_user[f"ndcg@{k}"][i] == pytest.approx(_brute_ndcg(ranked, list(user.held_out), k))
    for name, values in report.per_user.items():
        assert report.aggregate[name] == pytest.approx(values.mean())
    assert report.n_users == 3


def test_identical_users_aggregate_equals_user():
    params = init_params(12, 3, seed=1)
    users = [EvalUser(str(i), np.array([0, 1]), np.array([2, 3])) for i in range(4)]
    report = evaluate_split(params, users)
    for name, values in report.per_user.items():
        assert report.aggregate[name] == pytest.approx(values[0])


def test_fold_in_never_counted_as_hit():
    params = init_params(6, 2, seed=0)
    # the only held-out item also appears in fold-in: it is masked, so it can never be a hit
    report = evaluate_split(params, [EvalUser("x", np.array([0, 1, 2, 3, 4]), np.array([0]))], ks=[1])
    assert report.aggregate["recall@1"] == 0.0


def test_default_metrics():
    names = EvalConfig().metric_names()
    assert names == ["recall@20", "recall@50", "recall@100", "ndcg@20", "ndcg@50", "ndcg@100"]


def test_empty_user_list():
    with pytest.raises(InvalidInputError):
        evaluate_split(init_params(4, 2, seed=0), [])


def test_bad_normalization():
    with pytest.raises(ConfigError):
        EvalConfig(recall_normalization="max").validate()


def test_write_report(tmp_path):
    report = evaluate_split(init_params(12, 3, seed=1), _users())
    write_report(report, tmp_path / "report.json", config={"split": "test"}, per_user=True)
    data = json.loads((tmp_path / "report.json").read_text())
    assert data["config"] == {"split": "test"}
    assert data["n_users"] == 3
    assert set(data["per_user"]) == {"a", "b", "c"}
    assert data["aggregate"]["ndcg@100"] == pytest.approx(report.aggregate["ndcg@100"])


def test_compare_reports():
    comparison = compare_reports({"aggregate": {"recall@20": 0.4, "ndcg@100": 0.0}},
                                 {"aggregate": {"recall@20": 0.38, "ndcg@100": 0.1, "extra": 1.0}})
    assert set(comparison) == {"recall@20", "ndcg@100"}
    assert comparison["recall@20"]["relative_change"] == pytest.approx(-0.05)
    assert comparison["ndcg@100"]["relative_change"] is None
