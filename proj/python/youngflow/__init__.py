"""Pathwise toolkit for Young SDEs driven by fractional Brownian motion.

The heavy lifting lives in the compiled extension ``_core``. Installed wheels
ship it inside this package; in-repo builds put it on ``sys.path`` next to the
CMake build tree.
"""

try:
    from ._core import *  # noqa: F401,F403
    from ._core import __doc__ as _core_doc
except ImportError:  # pragma: no cover - in-repo build layout
    from _core import *  # noqa: F401,F403
    from _core import __doc__ as _core_doc

__doc__ = (__doc__ or "") + "\n\n" + (_core_doc or "")
__version__ = "0.1.0"
