"""Point pair function metrics: evaluation, quasi-metric searches, witnesses and oracles.

Domains and metrics use the same text forms as the ``ppf`` command line
(``"interval:-1:1"``, ``"ball:2"``, ``"ppf:alpha=12"``); points are sequences of floats.
"""

from ._core import *  # noqa: F401,F403
from ._core import NumericalError, PointPairError, SQRT5_OVER_2

__all__ = [name for name in dir() if not name.startswith("_")]
