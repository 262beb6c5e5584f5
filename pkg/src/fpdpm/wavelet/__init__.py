"""Orthonormal wavelet transforms with resolution-level grouping."""

from .models import Grid, PaddingRecord, WaveletCoefficients, WaveletFamily
from .transform import (
    analyze,
    coefficient_layout,
    crop,
    forward_dwt,
    from_vector,
    inverse_dwt,
    pad_to_dyadic,
    synthesize,
    synthesize_level,
    to_vector,
)

__all__ = [
    "Grid",
    "PaddingRecord",
    "WaveletCoefficients",
    "WaveletFamily",
    "analyze",
    "coefficient_layout",
    "crop",
    "forward_dwt",
    "from_vector",
    "inverse_dwt",
    "pad_to_dyadic",
    "synthesize",
    "synthesize_level",
    "to_vector",
]
