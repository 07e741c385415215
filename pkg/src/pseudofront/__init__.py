"""Front propagation and pattern formation toolkit for the pseudo-parabolic
equation u_t = (phi(u) + u_t)_xx.

The package has two halves that check each other:

* an asymptotics engine (:mod:`pseudofront.dispersion`, :mod:`pseudofront.stokes`)
  that predicts front speeds, decay rates, modulation periods and complex-plane
  switching-line geometry from the equation linearised about an unstable state,
* a direct solver (:mod:`pseudofront.pde`) plus measurement routines
  (:mod:`pseudofront.pattern`) that extract the same quantities from simulation.

The command line interface (:mod:`pseudofront.cli`) ties both together.
"""

from .nonlinearity import NonlinearitySpec, StabilityInfo, classify, stability_info
from .dispersion import (
    FrontPrediction,
    SaddleBranchSet,
    critical_front,
    saddle_branches,
    xi_f,
)

__version__ = "0.1.0"

__all__ = [
    "NonlinearitySpec",
    "StabilityInfo",
    "classify",
    "stability_info",
    "FrontPrediction",
    "SaddleBranchSet",
    "critical_front",
    "saddle_branches",
    "xi_f",
    "__version__",
]
