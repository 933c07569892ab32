"""Trade-off capacity regions for universal qudit cloners and the qudit Unruh channel.

The package has two independent computation routes that check each other:

* a closed-form route (``combinat`` -> ``spectra`` -> ``entropy`` -> ``regions``)
  built on exact occupation-vector combinatorics, and
* a matrix-level oracle (``channelsim``) that constructs cloner isometries,
  Unruh blocks, complementary channels and rank-one Kraus sets explicitly.

``cli`` exposes both as reproducible sweep/verify commands.
"""

__version__ = "0.1.0"

from .combinat import (
    OccupationVector,
    block_dimension,
    block_normalizer,
    compositions,
    eigen_multiplicity,
)
from .entropy import EntropyValue, ensemble_conditional_entropy_A, mixture_entropy, shannon_entropy
from .spectra import (
    ConvergenceError,
    EnsembleParams,
    Spectrum,
    UnruhConfig,
    cloner_spectrum,
    ensemble_spectrum_B,
    ensemble_spectrum_E,
    truncation_horizon,
    unruh_weight,
    unruh_weights,
)

__all__ = [
    "OccupationVector",
    "block_dimension",
    "block_normalizer",
    "compositions",
    "eigen_multiplicity",
    "EntropyValue",
    "shannon_entropy",
    "mixture_entropy",
    "ensemble_conditional_entropy_A",
    "Spectrum",
    "EnsembleParams",
    "UnruhConfig",
    "ConvergenceError",
    "cloner_spectrum",
    "ensemble_spectrum_B",
    "ensemble_spectrum_E",
    "unruh_weight",
    "unruh_weights",
    "truncation_horizon",
    "__version__",
]
