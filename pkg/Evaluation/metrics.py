# ./Evaluation/metrics.py
# Truncated ranking metrics with binary relevance

from typing import Sequence

import numpy as np

from utils.errors import InvalidInputError

RECALL_NORMALIZATIONS = ("min", "held_out")


def _hits(ranked_items: Sequence[int], held_out: Sequence[int], k: int) -> np.ndarray:
    if k < 1:
        raise InvalidInputError(f"k must be >= 1, got {k}")
    if len(held_out) == 0:
        raise InvalidInputError("held_out must be non-empty")
    return np.isin(np.asarray(ranked_items)[:k], np.asarray(held_out))


def rank_items(scores: np.ndarray) -> np.ndarray:
    """Item indices by descending score; equal scores keep ascending index order."""
    return np.argsort(-np.asarray(scores), kind="stable")


def recall_at_k(ranked_items: Sequence[int], held_out: Sequence[int], k: int,
                normalization: str = "min") -> float:
    """Held-out items found in the top k, over min(k, |held_out|) (or |held_out|)."""
    hits = _hits(ranked_items, held_out, k)
    if normalization == "min":
        denominator = min(k, len(held_out))
    elif normalization == "held_out":
        denominator = len(held_out)
    else:
        raise InvalidInputError(f"unknown recall normalization {normalization!r}")
    return float(hits.sum()) / denominator


def _discounts(length: int) -> np.ndarray:
    return 1.0 / np.log2(np.arange(2, length + 2, dtype=np.float64))


def ndcg_at_k(ranked_items: Sequence[int], held_out: Sequence[int], k: int) -> float:
    hits = _hits(ranked_items, held_out, k)
    dcg = float(np.sum(_discounts(len(hits))[hits]))
    idcg = float(np.sum(_discounts(min(k, len(held_out)))))
    return dcg / idcg
