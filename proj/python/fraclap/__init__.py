"""Extension-problem laboratory for strongly competing fractional systems.

The compiled core exposes the grid builder, the nonlinear Gauss-Seidel
extension solver, the beta continuation, the free-boundary diagnostics, the
weighted hemisphere eigensolvers, and the barrier constructions.
"""

from ._core import *  # noqa: F401,F403

__all__ = [name for name in dir() if not name.startswith("_")]
