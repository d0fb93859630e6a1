"""Conductances of finite 1D tight-binding samples.

Computes the two-reservoir (Landauer-Buttiker), spectral-measure (Thouless)
and crystalline conductances of a finite chain, plus the band-structure and
transfer-matrix machinery they rest on.
"""

from .numerics import (
    AccuracyError,
    BandedCornerMatrix,
    BracketError,
    NumericsError,
    SingularMatrixError,
    ValidationError,
    brent_root,
    eig_hermitian,
    integrate_adaptive,
    rng_uniform,
    solve_banded_corner,
)
from .sample import (
    Potential,
    anderson,
    constant,
    fibonacci,
    from_file,
    make_potential,
    periodic_pattern,
    periodize,
    repeat,
    zero,
)
from .transfer import (
    BandEdgeDegenerateError,
    BlochData,
    OutsideSpectrumError,
    TransferMatrix,
    bloch_data,
    discriminant,
    discriminant_value,
    in_spectrum,
    m_oracle,
    m_oracle_grid,
    transfer_matrix,
    transfer_norm,
)
from .periodic import (
    Band,
    BandStructure,
    band_edges,
    characteristic_check,
    dispersion,
    dispersion_slope_check,
    floquet_matrix,
    norm_exceedance_measure,
    spectrum_measure,
    theta_sublevel_measure,
    thouless_conductance,
)
from .reservoirs import (
    EnergyInterval,
    Reservoir,
    free_lead,
    matched,
    reservoir_F,
    transparency_check,
    wide_band,
)
from .transport import (
    EBBConfig,
    clb_conductance,
    clb_lower_bound_check,
    clb_transmission,
    effective_green_corner,
    lb_conductance,
    lb_transmission,
    repeated_lb_conductance,
)
from .harness import (
    ConductanceReport,
    RunConfig,
    Row,
    emit,
    parse_report,
    scaling_scan,
    verify_suite,
)

__version__ = "0.1.0"
