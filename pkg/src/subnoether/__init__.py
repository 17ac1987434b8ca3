"""subnoether - sub-symmetries and conservation laws of differential systems."""

__version__ = "0.1.0"
__all__ = ["__version__"]
