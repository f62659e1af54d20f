"""Joint-spectrum shaping and Schmidt-mode analysis of cascade emission pairs."""

from biphoton._core import *  # noqa: F401,F403
from biphoton._core import __doc__ as _core_doc

__doc__ = _core_doc
__version__ = "0.1.0"
