"""Attenuated photoacoustics: laws, kernels, causality, propagator SVD."""

try:
    from ._core import *  # noqa: F401,F403
    from . import _core as core  # noqa: F401
except ImportError:  # in-tree builds put _core next to the build dir
    from _core import *  # noqa: F401,F403
    import _core as core  # noqa: F401

__version__ = "1.0.0"
