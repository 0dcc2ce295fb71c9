# ./AutoEncoder/checkpoint.py

import json
from pathlib import Path
from typing import Dict, Optional, Tuple, Union

import numpy as np

from AutoEncoder.params import Activation, ModelParams
from utils.binary_io import BinaryReader, write_array, write_header, write_string, write_u64
from utils.errors import ArtifactFormatError
from utils.logger import info

CHECKPOINT_MAGIC = b"SAECF-CK"
CHECKPOINT_VERSION = 1


def save_checkpoint(params: ModelParams, path: Union[str, Path], metadata: Optional[Dict] = None) -> None:
    """Write parameters as little-endian float32 plus a JSON metadata block."""
    meta = dict(metadata or {})
    meta["activation"] = params.activation.value
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "wb") as f:
        write_header(f, CHECKPOINT_MAGIC, CHECKPOINT_VERSION)
        write_u64(f, params.d, params.num_items)
        write_array(f, params.W_enc, "<f4")
        write_array(f, params.b_enc, "<f4")
        write_array(f, params.W_dec, "<f4")
        write_array(f, params.b_dec, "<f4")
        write_string(f, json.dumps(meta, sort_keys=True))
    info(f"Saved checkpoint to {path}")


def load_checkpoint(path: Union[str, Path]) -> Tuple[ModelParams, Dict]:
    reader = BinaryReader.from_file(path)
    reader.expect_header(CHECKPOINT_MAGIC, CHECKPOINT_VERSION)
    d = reader.read_u64("hidden dimension")
    num_items = reader.read_u64("item count")
    W_enc = reader.read_array(d * num_items, "<f4", "W_enc").reshape(d, num_items)
    b_enc = reader.read_array(d, "<f4", "b_enc")
    W_dec = reader.read_array(num_items * d, "<f4", "W_dec").reshape(num_items, d)
    b_dec = reader.read_array(num_items, "<f4", "b_dec")
    try:
        metadata = json.loads(reader.read_string("metadata"))
    except json.JSONDecodeError as e:
        raise ArtifactFormatError(f"{path}: metadata block is not valid JSON: {e}") from e
    reader.expect_end()
    try:
        activation = Activation(metadata.get("activation", Activation.TANH.value))
    except ValueError as e:
        raise ArtifactFormatError(f"{path}: unknown activation {metadata.get('activation')!r}") from e
    params = ModelParams(
        enc_weights=np.ascontiguousarray(W_enc.T).astype(np.float32),
        b_enc=b_enc.astype(np.float32),
        W_dec=W_dec.astype(np.float32),
        b_dec=b_dec.astype(np.float32),
        activation=activation,
    )
    if not params.all_finite():
        raise ArtifactFormatError(f"{path}: checkpoint contains non-finite parameters")
    return params, metadata
