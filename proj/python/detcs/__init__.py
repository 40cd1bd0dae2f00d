"""Determinantal Cauchy-Schwarz verification (Python bindings)."""

from ._detcs import *  # noqa: F401,F403
from ._detcs import __doc__  # noqa: F401
