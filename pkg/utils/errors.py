"""Exception types shared by the library and the command-line front end."""
from typing import Optional


class TpcError(Exception):
    """Base class for every error raised on purpose by this project."""


class ConfigError(TpcError, ValueError):
    """Invalid scenario, radio or GA parameters.

    ``field`` is the dotted path of the offending value when known
    (``radio.deltaP``, ``environment.gs``) so the CLI can point at it.
    """

    def __init__(self, message: str, field: Optional[str] = None):
        self.field = field
        super().__init__(f"{field}: {message}" if field else message)


class ResourceError(TpcError, RuntimeError):
    """A precomputation would need more memory than the configured cap."""

    def __init__(self, message: str, required_bytes: int = 0, cap_bytes: int = 0):
        self.required_bytes = required_bytes
        self.cap_bytes = cap_bytes
        super().__init__(message)


class SearchSpaceError(ResourceError):
    """Exhaustive enumeration refused because the space exceeds the cap."""

    def __init__(self, size: int, cap: int):
        self.size = size
        self.cap = cap
        super().__init__(f"search space has {size} solutions, cap is {cap}")


class PlacementError(TpcError, RuntimeError):
    """Rack placement could not be sampled within the retry budget."""
