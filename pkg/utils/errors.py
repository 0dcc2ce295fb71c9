# ./utils/errors.py

from typing import Optional


class SaecfError(Exception):
    """Base class for every error raised by this project."""


class ConfigError(SaecfError, ValueError):
    """Invalid or unknown configuration value."""


class DatasetFormatError(SaecfError):
    """A raw interaction file could not be parsed."""

    def __init__(self, path: str, line: Optional[int], message: str):
        self.path = str(path)
        self.line = line
        location = f"{self.path}:{line}" if line is not None else self.path
        super().__init__(f"{location}: {message}")


class ArtifactFormatError(SaecfError):
    """A binary artifact (dataset, eval users, checkpoint) is corrupt or truncated."""


class VersionMismatchError(ArtifactFormatError):
    """A binary artifact was written by an unsupported format version."""


class ShapeMismatchError(SaecfError, ValueError):
    """Array shapes do not agree with the model or the batch."""


class NonFiniteError(SaecfError, FloatingPointError):
    """A loss or gradient became NaN or infinite during training."""

    def __init__(self, message: str, epoch: Optional[int] = None, batch: Optional[int] = None,
                 loss: Optional[float] = None):
        self.epoch = epoch
        self.batch = batch
        self.loss = loss
        details = ", ".join(
            f"{name}={value}" for name, value in (("epoch", epoch), ("batch", batch), ("loss", loss))
            if value is not None
        )
        super().__init__(f"{message} ({details})" if details else message)


class InvalidInputError(SaecfError, ValueError):
    """An argument is outside the range an operation accepts."""
