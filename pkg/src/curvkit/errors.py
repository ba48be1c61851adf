"""Exception types raised by the public API.

Everything recoverable derives from :class:`CurvkitError` so callers (and the
CLI) can distinguish bad input from internal failures.
"""

from __future__ import annotations


class CurvkitError(Exception):
    """Base class for all curvkit-specific errors."""


class ParseError(CurvkitError):
    """A text input file (edge list, labels, samples) is malformed."""

    def __init__(self, path: str, lineno: int, message: str):
        self.path = str(path)
        self.lineno = lineno
        super().__init__(f"{path}:{lineno}: {message}")


class EmptyGraphError(CurvkitError):
    """An input that must describe at least one edge or node did not."""


class InvalidNodeError(CurvkitError):
    """A node id is out of range for the graph it was used with."""


class MissingEdgeError(CurvkitError):
    """An edge-level operation was asked about a pair that is not an edge."""


class DisconnectedGraphError(CurvkitError):
    """An operation requiring a connected graph received a disconnected one."""


class ConditionNotMetError(CurvkitError):
    """A bound verification was requested on an edge whose curvature-based
    preconditions do not hold."""
