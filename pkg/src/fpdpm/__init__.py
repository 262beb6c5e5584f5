"""fpdpm - local clustering of image-valued functional data with wavelet-domain DP mixtures."""

__version__ = "0.1.0"
__all__ = ["__version__"]
