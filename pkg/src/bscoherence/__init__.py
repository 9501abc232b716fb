"""l1-norm coherence generated by cascades of lossless beam splitters.

Closed-form results live in :mod:`bscoherence.analytic`, cascade geometry in
:mod:`bscoherence.network`, and :mod:`bscoherence.oracle` propagates states
through cascades by brute force to check them.
"""

__version__ = "0.1.0"

from .analytic import (  # noqa: E402
    PhotonDistribution,
    coherent_coherence_single,
    gaussian_approx_single,
    max_coherent_approx,
    max_coherent_coherence,
    max_number_coherence,
    mixed_coherence,
    number_coherence,
    number_output_amplitudes,
    product_coherence,
    supremum_coherence,
    thermal_coherence_approx,
    thermal_coherence_approx_check,
)
from .coherence import (  # noqa: E402
    DensityMatrix,
    PureFockState,
    SectorMixture,
    l1_density,
    l1_pure,
    l1_sector_mixture,
)
from .fock_basis import dimension, enumerate_compositions  # noqa: E402
from .network import BeamSplitter, Cascade, config1, config2, optimal_split, tau_vector  # noqa: E402
