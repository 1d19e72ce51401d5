"""Python access to the gausslab numerical core."""

from ._gausslab import *  # noqa: F401,F403
from ._gausslab import __doc__  # noqa: F401
