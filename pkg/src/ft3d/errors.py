"""Exception types that CLI exit codes and callers can branch on."""


class UnsupportedSizeError(ValueError):
    """Transform size outside the supported set (powers of two, bounded range)."""


class ConfigurationError(ValueError):
    """Invalid tiling/buffer or performance-model configuration."""


class CalibrationError(ValueError):
    """Least-squares calibration is degenerate or produced non-physical parameters."""


class ResolutionError(ValueError):
    """Grid too coarse to resolve the requested density feature width."""


class FormatError(ValueError):
    """Tensor file is corrupt: bad magic, version, or truncated payload."""
