"""Semiring-weighted automaton minimisation."""

try:
    from ._core import *  # noqa: F401,F403
    from ._core import __version__  # noqa: F401
except ImportError:  # build-tree runs put the extension on sys.path directly
    from _core import *  # noqa: F401,F403
    from _core import __version__  # noqa: F401
