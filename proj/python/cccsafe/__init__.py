"""Safety-critical connected cruise control toolkit.

Car-following simulation with nominal connected cruise controllers,
barrier-based safety filters, safety/stability charts over controller-gain
space, and numerical boundary certification.
"""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
