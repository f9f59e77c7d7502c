"""Exception types shared across the package.

Two broad families: DataError for inputs that violate a file or record
contract, AnalysisError for computations whose preconditions fail.  The CLI
maps them to distinct exit codes.
"""
from __future__ import annotations


class DataError(Exception):
    """An input file or record violates its format contract."""


class ParseError(DataError):
    """A malformed row; carries the 1-based line number."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no
        self.reason = message


class AnalysisError(Exception):
    """A computation's preconditions are not met."""

    code = "ANALYSIS"


class DegenerateRangeError(AnalysisError):
    """A series is constant where a spread of values is required."""

    code = "DEGENERATE_RANGE"


class NoOverlapError(AnalysisError):
    """Two series share no dates."""

    code = "NO_OVERLAP"


class TooFewPointsError(AnalysisError):
    """A sample is smaller than the operation can handle."""

    code = "TOO_FEW_POINTS"


class OracleLimitError(AnalysisError):
    """The exhaustive reference search only runs on small samples."""

    code = "ORACLE_LIMIT"
