# ./BatchSampler/inclusion.py
# Probability that a non-interacted item enters a user's sampled columns

import math
from typing import Dict, List, Sequence

import numpy as np
from scipy.special import gammaln

from BatchSampler.epoch import plan_epoch
from utils.errors import ConfigError


def inclusion_probability_first_order(count_Ui: int, num_users: int, m: int) -> float:
    """First-order estimate min(|U_i| / N, 1) with N = ceil(|U| / m) batches."""
    if m < 1 or num_users < 1:
        raise ConfigError("m and num_users must be >= 1")
    n_batches = math.ceil(num_users / m)
    return min(count_Ui / n_batches, 1.0)


def _log_comb(n: float, k: float) -> float:
    return gammaln(n + 1) - gammaln(k + 1) - gammaln(n - k + 1)


def inclusion_probability_exact(count_Ui: int, num_users: int, m: int) -> float:
    """Chance that the full batch of a fixed non-interacting user holds >= 1 user of U_i.

    1 - C(|U|-1-|U_i|, m-1) / C(|U|-1, m-1), evaluated in log space.
    """
    if m < 1 or m > num_users:
        raise ConfigError(f"m must lie in [1, num_users], got m={m}, num_users={num_users}")
    if count_Ui < 0 or count_Ui > num_users - 1:
        raise ConfigError(f"|U_i| = {count_Ui} must lie in [0, {num_users - 1}]")
    if count_Ui == 0:
        return 0.0
    others = num_users - 1 - count_Ui
    if m - 1 > others:
        return 1.0
    log_ratio = _log_comb(others, m - 1) - _log_comb(num_users - 1, m - 1)
    return float(-np.expm1(log_ratio))


def compare_inclusion_probabilities(num_users: int, m: int, counts: Sequence[int]) -> List[Dict]:
    """First-order estimate vs exact value for each |U_i| in counts."""
    rows = []
    for count in counts:
        approx = inclusion_probability_first_order(count, num_users, m)
        exact = inclusion_probability_exact(count, num_users, m)
        rows.append({
            "count": int(count),
            "first_order": approx,
            "exact": exact,
            "relative_error": abs(approx - exact) / exact if exact > 0 else 0.0,
        })
    return rows


def simulate_inclusion_frequency(num_users: int, m: int, count_Ui: int, epochs: int, seed: int) -> float:
    """Monte-Carlo frequency that user 0 shares a batch with one of users 1..count_Ui.

    Only epochs where user 0 lands in a full-size batch are counted, matching
    the exact formula's assumption.
    """
    interacting = np.arange(1, count_Ui + 1)
    n_full = num_users // m
    hits = 0
    trials = 0
    positions = np.empty(num_users, dtype=np.int64)
    for epoch in range(epochs):
        plan = plan_epoch(num_users, m, seed, epoch)
        positions[plan.permutation] = np.arange(num_users)
        batch_of_user = positions[0] // m
        if batch_of_user >= n_full:
            continue
        trials += 1
        if np.any(positions[interacting] // m == batch_of_user):
            hits += 1
    return hits / trials if trials else 0.0
