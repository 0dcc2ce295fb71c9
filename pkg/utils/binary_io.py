# ./utils/binary_io.py
# Little-endian helpers shared by the dataset, eval-user and checkpoint formats

import struct
from pathlib import Path
from typing import BinaryIO, List, Sequence, Union

import numpy as np

from utils.errors import ArtifactFormatError, VersionMismatchError

MAGIC_SIZE = 8


def write_header(f: BinaryIO, magic: bytes, version: int) -> None:
    """Write the 8-byte magic followed by a u32 format version."""
    assert len(magic) == MAGIC_SIZE
    f.write(magic)
    f.write(struct.pack("<I", version))


def write_u32(f: BinaryIO, *values: int) -> None:
    f.write(struct.pack(f"<{len(values)}I", *values))


def write_u64(f: BinaryIO, *values: int) -> None:
    f.write(struct.pack(f"<{len(values)}Q", *values))


def write_array(f: BinaryIO, values: np.ndarray, dtype: str) -> None:
    """Write values as a little-endian array of the given numpy dtype (e.g. '<u4')."""
    f.write(np.ascontiguousarray(values, dtype=np.dtype(dtype)).tobytes())


def write_string(f: BinaryIO, text: str) -> None:
    data = text.encode("utf-8")
    f.write(struct.pack("<I", len(data)))
    f.write(data)


def write_strings(f: BinaryIO, texts: Sequence[str]) -> None:
    for text in texts:
        write_string(f, text)


class BinaryReader:
    """Cursor over an in-memory artifact that reports truncation with the file name."""

    def __init__(self, data: bytes, path: Union[str, Path]):
        self.data = data
        self.path = str(path)
        self.pos = 0

    @classmethod
    def from_file(cls, path: Union[str, Path]) -> "BinaryReader":
        with open(path, "rb") as f:
            return cls(f.read(), path)

    def _take(self, size: int, what: str) -> memoryview:
        end = self.pos + size
        if size < 0 or end > len(self.data):
            raise ArtifactFormatError(
                f"{self.path}: truncated while reading {what} "
                f"(need {size} bytes at offset {self.pos}, file has {len(self.data)})"
            )
        view = memoryview(self.data)[self.pos:end]
        self.pos = end
        return view

    def expect_header(self, magic: bytes, version: int) -> int:
        found = bytes(self._take(MAGIC_SIZE, "magic"))
        if found != magic:
            raise ArtifactFormatError(f"{self.path}: bad magic {found!r}, expected {magic!r}")
        (found_version,) = struct.unpack("<I", self._take(4, "format version"))
        if found_version != version:
            raise VersionMismatchError(
                f"{self.path}: format version {found_version} is not supported (expected {version})"
            )
        return found_version

    def read_u32(self, what: str) -> int:
        return struct.unpack("<I", self._take(4, what))[0]

    def read_u64(self, what: str) -> int:
        return struct.unpack("<Q", self._take(8, what))[0]

    def read_array(self, count: int, dtype: str, what: str) -> np.ndarray:
        dt = np.dtype(dtype)
        raw = self._take(count * dt.itemsize, what)
        return np.frombuffer(raw, dtype=dt).copy()

    def read_string(self, what: str) -> str:
        size = self.read_u32(f"{what} length")
        try:
            return bytes(self._take(size, what)).decode("utf-8")
        except UnicodeDecodeError as e:
            raise ArtifactFormatError(f"{self.path}: {what} is not valid UTF-8: {e}") from e

    def read_strings(self, count: int, what: str) -> List[str]:
        return [self.read_string(what) for _ in range(count)]

    def expect_end(self) -> None:
        if self.pos != len(self.data):
            raise ArtifactFormatError(
                f"{self.path}: {len(self.data) - self.pos} unexpected trailing bytes"
            )
