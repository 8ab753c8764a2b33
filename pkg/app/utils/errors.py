# app/utils/errors.py
"""
Exception hierarchy shared by the library, the CLI and the HTTP layer.

Library code raises these and never exits the process. The CLI maps any
`DimforceError` to exit status 2; the API maps them to 4xx responses.
"""
from typing import Iterable, Optional, Tuple


class DimforceError(Exception):
    """Base class for every error raised by dimforce."""


class GraphConstructionError(DimforceError, ValueError):
    def __init__(self, pair: Tuple[int, int], reason: str):
        self.pair = pair
        self.reason = reason
        super().__init__(f"invalid edge {pair}: {reason}")


class DisconnectedGraphError(DimforceError, ValueError):
    def __init__(self, what: str = "this operation"):
        super().__init__(f"{what} requires a connected graph")


class GraphOrderError(DimforceError, ValueError):
    def __init__(self, n: int, what: str = "graph parameters"):
        self.n = n
        super().__init__(f"{what} require a graph of order n >= 2 (got n={n})")


class GraphClassError(DimforceError, ValueError):
    """The graph is of the wrong class (tree / unicyclic / path) for an operation."""


class EmptyLandmarkSetError(DimforceError, ValueError):
    def __init__(self):
        super().__init__("landmark set W must be non-empty")


class CapExceededError(DimforceError):
    def __init__(self, n: int, cap: int, what: str):
        self.n = n
        self.cap = cap
        self.what = what
        super().__init__(
            f"{what} refuses graphs with n={n} vertices (cap is {cap}); "
            f"raise it with --cap {n} or DIMFORCE_CAPS"
        )


class ParseError(DimforceError, ValueError):
    def __init__(self, message: str, source: str = "<input>", line: Optional[int] = None):
        self.source = source
        self.line = line
        where = f"{source}:{line}" if line is not None else source
        super().__init__(f"{where}: {message}")


class FamilySpecError(DimforceError, ValueError):
    """Unknown family or malformed family parameters."""


class UnknownCheckError(DimforceError, ValueError):
    def __init__(self, name: str, valid: Iterable[str]):
        self.name = name
        super().__init__(f"unknown check {name!r}; valid checks: {', '.join(sorted(valid))}")


class PreconditionError(DimforceError, ValueError):
    """An operation's documented precondition does not hold for its input."""


class ConstructionError(DimforceError):
    """A constructive set failed its own verification."""


class ConfigError(DimforceError, ValueError):
    """Malformed configuration value (e.g. DIMFORCE_CAPS)."""
