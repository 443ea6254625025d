"""Random epsilon-1-in-k SAT: generation, exact enumeration, solution geometry and bounds."""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
