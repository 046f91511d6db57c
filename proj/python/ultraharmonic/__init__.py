"""Harmonic and piecewise syndetic sets of positive integers."""

from ._core import *  # noqa: F401,F403
from ._core import SetExpr, UltraharmonicError, __version__  # noqa: F401
