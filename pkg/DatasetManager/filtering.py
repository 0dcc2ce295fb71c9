# ./DatasetManager/filtering.py

import pandas as pd

from DatasetManager.types import RawInteractions
from utils.errors import ConfigError
from utils.logger import info


def filter_min_counts(raw: RawInteractions, min_items_per_user: int, min_users_per_item: int) -> RawInteractions:
    """Deduplicate pairs, drop rare items, then drop light users (one pass each, in that order)."""
    if min_items_per_user < 0 or min_users_per_item < 0:
        raise ConfigError("filter thresholds must be >= 0")

    frame = raw.frame.drop_duplicates(subset=["user", "item"], keep="first")
    if frame.empty:
        return RawInteractions(frame.reset_index(drop=True))

    item_counts = frame["item"].value_counts()
    keep_items = item_counts.index[item_counts >= min_users_per_item]
    frame = frame[frame["item"].isin(keep_items)]

    user_counts = frame["user"].value_counts()
    keep_users = user_counts.index[user_counts >= min_items_per_user]
    frame = frame[frame["user"].isin(keep_users)]

    info(
        f"Filtered to {frame['user'].nunique()} users, {frame['item'].nunique()} items, "
        f"{len(frame)} interactions (min {min_items_per_user} items/user, min {min_users_per_item} users/item)"
    )
    return RawInteractions(frame.reset_index(drop=True))
