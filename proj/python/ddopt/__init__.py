"""Optimal dynamical-decoupling pulse sequences for AC quantum sensing.

The heavy lifting lives in the compiled extension ``ddopt._core``: model
construction (field vector and Toeplitz noise coupling), the spherical-model
sensitivity bound, the two simulated-annealing refiners, sequence baselines
(CP / gCP), metrics, and the population-curve fit.
"""

from ._core import *  # noqa: F401,F403
from ._core import __doc__ as _core_doc

__all__ = [name for name in dir() if not name.startswith("_")]
__doc__ = _core_doc or __doc__
