"""Spanning tree packing, implicit decomposition and swap rounding."""

from ._treepack import *  # noqa: F401,F403
from ._treepack import __doc__  # noqa: F401
