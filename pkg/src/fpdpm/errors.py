"""Custom fPDPM exceptions."""

from typing import Any


class FpdpmError(Exception):
    """Base exception for fpdpm errors."""

    def __init__(
        self, message: str, original_error: Exception | None = None
    ) -> None:
        super().__init__(message)
        self.original_error = original_error


class DimensionError(FpdpmError, ValueError):
    """Exception raised when array or grid dimensions are inconsistent.

    This typically occurs when:
    - An image is not on a dyadic grid and padding was not requested
    - A padding target is smaller than the original image
    - A coefficient vector has the wrong length for its level
    """

    pass


class StructureError(FpdpmError, ValueError):
    """Exception raised for malformed wavelet coefficient structures."""

    pass


class ParameterError(FpdpmError, ValueError):
    """Exception raised for invalid argument values (k > n, shape mismatch)."""

    pass


class DegenerateInputError(FpdpmError, ValueError):
    """Exception raised when input carries no usable information.

    This typically occurs when:
    - Data have zero variance
    - A silhouette is requested for a single cluster
    """

    pass


class ConfigurationError(FpdpmError, ValueError):
    """Exception raised for invalid configuration keys or values."""

    def __init__(
        self,
        message: str,
        field: str | None = None,
        original_error: Exception | None = None,
    ) -> None:
        super().__init__(message, original_error)
        self.field = field


class StateCorruptionError(FpdpmError, RuntimeError):
    """Exception raised when the sampler state violates its invariants.

    This typically occurs when:
    - A membership points at an atom that does not exist
    - An occupied cluster has zero stick weight
    - A slice set is empty after stick extension
    """

    pass


class NumericError(FpdpmError, ArithmeticError):
    """Exception raised for non-finite values during computation.

    Carries the sweep and parameter block at which the problem surfaced so
    the CLI can print a diagnostic dump before aborting.
    """

    def __init__(
        self,
        message: str,
        iteration: int | None = None,
        block: str | None = None,
        diagnostic: dict[str, Any] | None = None,
        original_error: Exception | None = None,
    ) -> None:
        super().__init__(message, original_error)
        self.iteration = iteration
        self.block = block
        self.diagnostic = diagnostic or {}
