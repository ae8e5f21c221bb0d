"""Exception types raised across the tropic pipeline."""

from __future__ import annotations


class TropicError(Exception):
    """Base class for all tropic errors."""


class EmptyInput(TropicError):
    """The input contained no data records."""


class MalformedRow(TropicError):
    """A single input row that could not be parsed."""

    def __init__(self, line_no: int, reason: str):
        super().__init__(f"line {line_no}: {reason}")
        self.line_no = line_no
        self.reason = reason


class ParseAborted(TropicError):
    """The file was rejected because one or more rows were malformed."""

    def __init__(self, row_errors: list[MalformedRow], truncated: bool = False):
        suffix = " (error collection truncated)" if truncated else ""
        super().__init__(
            f"rejected input with {len(row_errors)} malformed row(s){suffix}"
        )
        self.row_errors = row_errors
        self.truncated = truncated


class LimitExceeded(TropicError):
    """The edge list is larger than the configured cap."""

    def __init__(self, count: int, limit: int):
        super().__init__(f"edge list has {count} records, limit is {limit}")
        self.count = count
        self.limit = limit


class NoHost(TropicError):
    """The URL has no host component to derive a publisher from."""

    def __init__(self, url: str):
        super().__init__(f"no host in {url!r}")
        self.url = url


class ScoreOutOfRange(TropicError):
    """A trust score fell outside the 0-100 scale."""

    def __init__(self, message: str, line_no: int | None = None):
        super().__init__(message)
        self.line_no = line_no


class DuplicateDomain(TropicError):
    """The same publisher appeared twice in a base-knowledge file."""

    def __init__(self, domain: str):
        super().__init__(f"duplicate domain {domain!r}")
        self.domain = domain


class IndexOutOfRange(TropicError, IndexError):
    """A node index fell outside the graph."""


class NoConvergence(TropicError):
    """The solver exhausted its iteration budget."""

    def __init__(self, iterations: int, residual: float):
        super().__init__(
            f"no convergence after {iterations} iterations, residual {residual:.3e}"
        )
        self.iterations = iterations
        self.residual = residual


class InvalidAlpha(TropicError):
    """The significance level must lie in (0, 1]."""


class NotAVoter(TropicError):
    """The user shared no URL belonging to any engagement community."""


class AlreadyAnnotated(TropicError):
    """Prediction was requested for a publisher that has an annotation."""


class UnknownPublisher(TropicError):
    """The publisher does not appear in the edge list."""


class NotUserAnnotated(TropicError):
    """Only annotations added through the console can be removed."""


class UnknownJob(TropicError):
    """No job with that id exists."""


class NotReady(TropicError):
    """The job has not finished its pipeline yet."""
