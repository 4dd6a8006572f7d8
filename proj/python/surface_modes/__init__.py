"""Transmission eigenvalues and surface-localized eigenmodes of the radial
interior transmission problem."""

from ._core import *  # noqa: F401,F403
from ._core import (
    DegenerateBoundary,
    DomainError,
    NoSignChange,
    NumericalError,
)

__version__ = "0.1.0"
