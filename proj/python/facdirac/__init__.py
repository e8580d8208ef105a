"""Dirac-like Hamiltonians built from shape-invariant factorizations."""

from ._core import *  # noqa: F401,F403
from ._core import ConfigError, Error  # noqa: F401

__version__ = "0.1.0"
