# ./Evaluation/protocol.py
# Fold-in evaluation over held-out users and the JSON report

import json
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Union

import numpy as np

from AutoEncoder.params import ModelParams
from AutoEncoder.predict import predict_scores_batch
from DatasetManager.types import EvalUser
from Evaluation.metrics import RECALL_NORMALIZATIONS, ndcg_at_k, rank_items, recall_at_k
from utils.errors import ConfigError, InvalidInputError
from utils.logger import info, log_eval

# Always reported, whatever ks are requested
BASE_RECALL_KS = (20, 50)
BASE_NDCG_KS = (50, 100)


@dataclass
class EvalConfig:
    ks: List[int] = field(default_factory=lambda: [20, 50, 100])
    recall_normalization: str = "min"
    batch_users: int = 1000

    def validate(self) -> "EvalConfig":
        if not self.ks or any(k < 1 for k in self.ks):
            raise ConfigError(f"ks must be a non-empty list of positive integers, got {self.ks}")
        if self.recall_normalization not in RECALL_NORMALIZATIONS:
            raise ConfigError(
                f"recall_normalization must be one of {RECALL_NORMALIZATIONS}, got {self.recall_normalization!r}"
            )
        if self.batch_users < 1:
            raise ConfigError(f"batch_users must be >= 1, got {self.batch_users}")
        return self

    def metric_names(self) -> List[str]:
        recall_ks = sorted(set(self.ks) | set(BASE_RECALL_KS))
        ndcg_ks = sorted(set(self.ks) | set(BASE_NDCG_KS))
        return [f"recall@{k}" for k in recall_ks] + [f"ndcg@{k}" for k in ndcg_ks]

    def to_dict(self) -> Dict:
        return asdict(self)


@dataclass
class EvalReport:
    """Per-user metric values (one array per metric, in user order) and their means."""
    user_ids: List[str]
    per_user: Dict[str, np.ndarray]
    aggregate: Dict[str, float]

    @property
    def n_users(self) -> int:
        return len(self.user_ids)

    def to_dict(self, per_user: bool = False) -> Dict:
        result = {"n_users": self.n_users, "aggregate": dict(self.aggregate)}
        if per_user:
            result["per_user"] = {
                user_id: {name: float(values[i]) for name, values in self.per_user.items()}
                for i, user_id in enumerate(self.user_ids)
            }
        return result


def _user_metrics(ranked: np.ndarray, held_out: np.ndarray, names: Sequence[str],
                  normalization: str) -> List[float]:
    values = []
    for name in names:
        metric, k = name.split("@")
        if metric == "recall":
            values.append(recall_at_k(ranked, held_out, int(k), normalization))
        else:
            values.append(ndcg_at_k(ranked, held_out, int(k)))
    return values


def evaluate_split(params: ModelParams, users: Sequence[EvalUser], ks: Optional[Sequence[int]] = None,
                   config: Optional[EvalConfig] = None) -> EvalReport:
    """Score each user's fold-in items, rank every item and measure the held-out hits."""
    config = EvalConfig(**(config or EvalConfig()).to_dict())
    if ks is not None:
        config.ks = list(ks)
    config.validate()
    if len(users) == 0:
        raise InvalidInputError("evaluate_split needs at least one user")

    names = config.metric_names()
    max_k = max(int(name.split("@")[1]) for name in names)
    rows: List[List[float]] = []
    for start in range(0, len(users), config.batch_users):
        chunk = users[start:start + config.batch_users]
        scores = predict_scores_batch(params, [user.fold_in for user in chunk])
        for user, user_scores in zip(chunk, scores):
            ranked = rank_items(user_scores)[:max_k]
            rows.append(_user_metrics(ranked, user.held_out, names, config.recall_normalization))
        log_eval(f"Evaluated {min(start + config.batch_users, len(users))}/{len(users)} users")

    table = np.asarray(rows, dtype=np.float64)
    per_user = {name: table[:, j] for j, name in enumerate(names)}
    aggregate = {name: float(values.mean()) for name, values in per_user.items()}
    info("Evaluation: " + ", ".join(f"{name}={value:.4f}" for name, value in aggregate.items()))
    return EvalReport(user_ids=[user.user_id for user in users], per_user=per_user, aggregate=aggregate)


def write_report(report: EvalReport, path: Union[str, Path], config: Optional[Dict] = None,
                 per_user: bool = False) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    payload = {"config": config or {}, **report.to_dict(per_user=per_user)}
    with open(path, "w") as f:
        json.dump(payload, f, indent=2, sort_keys=True)
    info(f"Wrote evaluation report to {path}")


def _aggregate_of(report: Union[EvalReport, Dict]) -> Dict[str, float]:
    if isinstance(report, EvalReport):
        return report.aggregate
    if "aggregate" not in report:
        raise InvalidInputError("report has no 'aggregate' section")
    return report["aggregate"]


def compare_reports(baseline: Union[EvalReport, Dict], candidate: Union[EvalReport, Dict]) -> Dict[str, Dict]:
    """Relative change of every metric both reports share: (candidate - baseline) / baseline."""
    base, cand = _aggregate_of(baseline), _aggregate_of(candidate)
    comparison = {}
    for name in sorted(set(base) & set(cand)):
        b, c = float(base[name]), float(cand[name])
        comparison[name] = {
            "baseline": b,
            "candidate": c,
            "relative_change": (c - b) / b if b != 0 else None,
        }
    return comparison
