"""Exception types shared across the package.

The CLI maps these onto distinct exit codes, so library code should raise
the most specific one that applies.
"""


class GenusError(Exception):
    """Base class for all package-specific errors."""


class SchemaError(GenusError):
    """Malformed input document or value of the wrong shape."""


class DimensionError(SchemaError):
    """Vector or matrix of the wrong length for the ambient group."""


class AmbientMismatchError(GenusError):
    """Two values that must share an ambient group do not."""


class BoundExceededError(GenusError):
    """Requested computation exceeds the configured enumeration bound."""


class PrecisionError(GenusError):
    """Finite-level data is too coarse to determine the answer."""
