"""Python bindings for the bhtlab C++ core."""

from ._bhtlab import *  # noqa: F401,F403
from ._bhtlab import __version__, run_cli

__all__ = [name for name in dir() if not name.startswith("_")] + ["__version__"]
