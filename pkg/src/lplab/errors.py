"""Exception types shared across the toolkit."""


class LplabError(Exception):
    """Base class for all toolkit errors."""


class FormatError(LplabError):
    """Malformed input data (edge lists, graph6/sparse6 lines, path specs)."""


class UsageError(LplabError):
    """An operation was called outside its stated preconditions."""
