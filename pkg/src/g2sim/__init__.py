"""Second-order intensity correlation (g2) of classical fields on beam
splitters and Mach-Zehnder interferometers."""

from g2sim.fields import (
    FieldPair,
    PlaneWaveField,
    TwoPortMatrix,
    apply_two_port,
    bs_matrix,
    compose,
    eval_plane_wave,
    intensity,
    phase_shifter,
)
from g2sim.correlator import (
    AnticorrelationSolution,
    CorrelationSample,
    RelativePhaseState,
    UndefinedCorrelationError,
    anticorrelation_phases,
    coincidence_time_average,
    g2_coherent,
    g2_from_fields,
    hbt_chaotic_g2,
    incoherent_baseline,
)
from g2sim.hom import (
    HomDipCurve,
    SpectralEnsemble,
    event_g2,
    g2_phi_map,
    gaussian_spectral_grid,
    hom_dip_closed_form,
    hom_dip_curve,
    sampled_spectral_ensemble,
)
from g2sim.mzi import (
    BunchingEvent,
    MziConfig,
    bunching_port,
    mzi_g2_normalized,
    mzi_outputs,
    mzi_transfer,
    random_bunching_stream,
)

__version__ = "0.1.0"
