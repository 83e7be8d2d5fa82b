"""Exception hierarchy shared by the library and the command line."""


class UsageError(ValueError):
    """Invalid input: malformed data, wrong lengths, violated preconditions."""


class UnsupportedRegimeError(ValueError):
    """The input is valid but outside the regime the computation supports."""


class ConsistencyError(RuntimeError):
    """Two computations that must agree did not; indicates a bug, not bad input."""
