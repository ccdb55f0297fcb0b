"""Weighted Fermat-Torricelli points and the oscillating knot of the pulley board."""

from .analysis import *  # noqa: F401,F403
from .dynamics import *  # noqa: F401,F403
from .errors import *  # noqa: F401,F403
from .fermat_core import *  # noqa: F401,F403

__version__ = "0.1.0"
