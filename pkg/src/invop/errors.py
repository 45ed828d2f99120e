"""Exception types shared across the toolkit."""


class InvopError(Exception):
    """Base class for all toolkit-specific failures."""


class CapacityError(InvopError):
    """A requested dense matrix exceeds the configured storage budget."""


class SingularMatrixError(InvopError):
    """The operator matrix is singular to working precision."""


class MantissaOverflowError(InvopError):
    """A quantized entry does not fit the exactly-representable mantissa range."""


class DegenerateProblemError(InvopError):
    """The reference solution is identically zero; the error metric cannot normalize."""


class CacheError(InvopError):
    """A cache file is missing, corrupt, or has an unsupported layout."""
