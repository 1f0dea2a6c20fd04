"""framebench: numerical workbench for finite truncations of localized frames.

Submodules
----------
linalg
    Dense complex kernels: Hermitian eigendecomposition, fractional matrix
    powers, operator p-norms, condition numbers, smallest-gain brackets.
frames
    Vector families against an ambient ONB, Gram matrices, frame/Riesz
    bounds, canonical duals, frame-operator powers, coordinate p-norms.
localization
    Off-diagonal decay norms (polynomial sup norm, weighted Schur norm) and
    ladder-based localization evidence.
rdual
    Riesz-dual sequences, their Grams, duality verdicts and decay transfer.
equivalence
    The ten-condition consistency battery over a truncation ladder, plus the
    harmonic-decay counterexample fixture.
sampling
    Shift-invariant spaces: B-spline and tabulated generators, perturbed
    integer sampling sets, autocorrelation Grams and stable-sampling verdicts.
cli
    JSON-config command line driver emitting reproducible reports.
"""

from . import equivalence, errors, frames, linalg, localization, rdual, sampling
from .equivalence import (
    ConditionWitness,
    EquivalenceReport,
    coorbit_equivalence_check,
    counterexample_family,
    perturbed_onb_family,
    run_battery,
)
from .frames import (
    FrameBounds,
    TruncationLadder,
    VectorFamily,
    analysis,
    canonical_dual,
    coorbit_condition,
    coorbit_norm,
    cross_gram,
    frame_bounds,
    frame_operator,
    gram,
    power_transform,
    riesz_bounds,
    synthesis,
)
from .linalg import (
    GainBracket,
    SpectralDecomposition,
    condition_p,
    hermitian_eig,
    matrix_power,
    pnorm_operator,
    smallest_gain,
)
from .localization import (
    DecayReport,
    LocalizationProfile,
    WeightSpec,
    fit_decay_exponent,
    jaffard_norm,
    mutual_localization,
    schur_norm,
)
# The rdual *function* is reached through its module (framebench.rdual.rdual):
# re-exporting it here would shadow the submodule name.
from .rdual import (
    rdual_gram,
    verify_rdual_duality,
    verify_rdual_localization,
)
from .sampling import (
    Generator,
    SamplingReport,
    SamplingSet,
    autocorrelation_gram,
    bspline_eval,
    generator_eval,
    sampling_matrix,
    shift_gram,
    stable_sampling_verdict,
)

__version__ = "0.1.0"
