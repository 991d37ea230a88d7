"""Exception hierarchy shared across the toolkit."""


class TrajlensError(Exception):
    """Base class for all toolkit errors."""


class DimensionMismatch(TrajlensError):
    """A selection mask and a grid disagree in shape."""


class InvalidRotation(TrajlensError):
    """Rotation requested on a selection whose bounding box is not square."""


class EmptyClipboard(TrajlensError):
    """Paste attempted before any copy loaded the clipboard."""


class ParseError(TrajlensError):
    """A file could not be parsed at all (malformed container)."""


class SchemaError(TrajlensError):
    """A parsed file is missing required structure."""


class SequenceParseError(TrajlensError):
    """One log row's action sequence could not be decoded.

    Collected per row by the log parser; never fatal for the whole file.
    """

    def __init__(self, row: int, message: str):
        super().__init__(f"row {row}: {message}")
        self.row = row
        self.message = message


class ReplayError(TrajlensError):
    """A recorded action could not be applied during replay."""

    def __init__(self, index: int, cause: Exception):
        super().__init__(f"action {index} failed: {cause}")
        self.index = index
        self.cause = cause


class TaskMismatch(TrajlensError):
    """A trajectory was paired with a task it does not belong to."""


class EmptyGraph(TrajlensError):
    """An analytics operation was asked to summarize a graph with no nodes."""


class MetricMismatch(TrajlensError):
    """Distributions of different metrics were mixed in one ranking."""


class SegmentOutOfBounds(TrajlensError):
    """An intention segment points outside its trajectory."""


class UnsolvableTask(TrajlensError):
    """A corpus generator was asked for a task with no scripted solution."""
