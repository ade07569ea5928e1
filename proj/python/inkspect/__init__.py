"""Hyperspectral document ink analysis: ENVI I/O, ink segmentation and
spectral clustering (k-means, fuzzy c-means, agglomerative)."""

from ._core import *  # noqa: F401,F403
from ._core import __all__ as _core_all

__all__ = list(_core_all)
__version__ = "0.1.0"
