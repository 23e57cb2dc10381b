"""Zak and Weyl-Heisenberg transforms over finite abelian groups."""

try:
    from ._tfq import *  # noqa: F401,F403  (installed package layout)
except ImportError:  # pragma: no cover - build-tree layout used by ctest
    from _tfq import *  # noqa: F401,F403
