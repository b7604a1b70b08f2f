"""Python bindings for the subdivision finders."""

from ._subdiv import *  # noqa: F401,F403
from ._subdiv import SubdivError  # noqa: F401
