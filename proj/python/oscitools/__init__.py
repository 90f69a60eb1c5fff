"""Exact computations with oscillator sets and separation invariants.

Thin wrapper over the compiled extension: free-group word arithmetic, the
one-relator word problem, bounded oscillator-set enumeration, dyadic affine
closed forms, separation estimates with bound kinds, and reproducible
verification scenarios.
"""

try:
    from ._core import *  # noqa: F401,F403
    from ._core import __version__  # noqa: F401
except ImportError:  # in-build-tree usage: the extension sits beside the package
    from _core import *  # type: ignore # noqa: F401,F403
    from _core import __version__  # type: ignore # noqa: F401
