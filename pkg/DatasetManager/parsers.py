# ./DatasetManager/parsers.py
# Readers for MovieLens-style rating CSVs and MSD-style play-count triplets

import re
from pathlib import Path
from typing import List, Union

import numpy as np
import pandas as pd

from DatasetManager.types import RawInteractions
from utils.errors import DatasetFormatError
from utils.logger import info

_LINE_PATTERN = re.compile(r"line (\d+)")


def _read_table(path: Union[str, Path], names: List[str], sep: str, skip_header: bool) -> pd.DataFrame:
    """Read every field as text so malformed values can be reported by line.

    Columns are taken by position; a row carrying more fields than ``names`` is rejected.
    """
    first_line = 2 if skip_header else 1
    try:
        frame = pd.read_csv(
            path,
            sep=sep,
            header=None,
            skiprows=1 if skip_header else 0,
            index_col=False,
            dtype=str,
            keep_default_na=False,
            na_values=[],
            skip_blank_lines=False,
            engine="c",
        )
    except pd.errors.EmptyDataError:
        return pd.DataFrame({name: pd.Series([], dtype=object) for name in names})
    except pd.errors.ParserError as e:
        match = _LINE_PATTERN.search(str(e))
        line = int(match.group(1)) if match else None
        raise DatasetFormatError(path, line, f"wrong column count: {e}") from e
    except (OSError, UnicodeDecodeError) as e:
        raise DatasetFormatError(path, None, f"cannot read file: {e}") from e

    if frame.shape[1] > len(names):
        extra = frame.iloc[:, len(names):].fillna("").apply(lambda col: col.astype(str).str.strip())
        too_long = (extra != "").any(axis=1).to_numpy()
        if too_long.any():
            row = int(np.flatnonzero(too_long)[0])
            raise DatasetFormatError(path, row + first_line,
                                     f"expected {len(names)} columns, found {frame.shape[1]}")
        frame = frame.iloc[:, :len(names)].copy()
    for position in range(frame.shape[1], len(names)):
        frame[position] = ""
    frame.columns = names
    return frame.reset_index(drop=True)


def _check_rows(frame: pd.DataFrame, path: Union[str, Path], value_column: str,
                first_line: int) -> pd.DataFrame:
    """Drop blank lines, reject short rows and non-numeric values, parse values to float."""
    if frame.empty:
        return frame.assign(**{value_column: pd.Series([], dtype=np.float64)})
    stripped = frame.fillna("").apply(lambda col: col.astype(str).str.strip())
    empty = stripped == ""
    blank = empty.all(axis=1)
    frame = stripped[~blank]
    short = empty[~blank].any(axis=1)
    if short.any():
        line = int(frame.index[short.to_numpy()][0]) + first_line
        raise DatasetFormatError(path, line, f"expected {frame.shape[1]} non-empty columns")
    values = pd.to_numeric(frame[value_column], errors="coerce")
    bad = values.isna() | ~np.isfinite(values.to_numpy(dtype=np.float64))
    if bad.any():
        line = int(frame.index[bad.to_numpy()][0]) + first_line
        raw = frame.loc[frame.index[bad.to_numpy()][0], value_column]
        raise DatasetFormatError(path, line, f"non-numeric {value_column} {raw!r}")
    frame = frame.assign(**{value_column: values.astype(np.float64)})
    return frame


def parse_ratings_csv(path: Union[str, Path], positive_threshold: float) -> RawInteractions:
    """Parse ``userId,movieId,rating,timestamp`` rows, keeping ratings >= positive_threshold."""
    frame = _read_table(path, ["user", "item", "rating", "timestamp"], sep=",", skip_header=True)
    # index 0 is the line after the header
    frame = _check_rows(frame, path, "rating", first_line=2)
    kept = frame[frame["rating"] >= positive_threshold]
    info(f"Parsed {len(frame)} ratings from {path}, kept {len(kept)} with rating >= {positive_threshold}")
    return RawInteractions(pd.DataFrame({
        "user": kept["user"].to_numpy(dtype=object),
        "item": kept["item"].to_numpy(dtype=object),
        "value": kept["rating"].to_numpy(dtype=np.float64),
    }))


def parse_triplets_tsv(path: Union[str, Path]) -> RawInteractions:
    """Parse headerless ``user<TAB>song<TAB>count`` rows, keeping counts >= 1."""
    frame = _read_table(path, ["user", "item", "count"], sep="\t", skip_header=False)
    frame = _check_rows(frame, path, "count", first_line=1)
    kept = frame[frame["count"] >= 1]
    info(f"Parsed {len(frame)} triplets from {path}, kept {len(kept)} with count >= 1")
    return RawInteractions(pd.DataFrame({
        "user": kept["user"].to_numpy(dtype=object),
        "item": kept["item"].to_numpy(dtype=object),
        "value": kept["count"].to_numpy(dtype=np.float64),
    }))
