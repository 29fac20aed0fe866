"""Curves and invariant surfaces with prescribed geometry-induced potentials."""

try:
    from ._gipsurf import *  # noqa: F401,F403  (installed package layout)
    from ._gipsurf import __doc__ as _doc
except ImportError:  # in-tree build: extension sits next to the package on sys.path
    from _gipsurf import *  # noqa: F401,F403
    from _gipsurf import __doc__ as _doc

__doc__ = _doc
__version__ = "0.1.0"
