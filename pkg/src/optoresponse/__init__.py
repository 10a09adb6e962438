"""Linear-response toolkit for a parametrically driven two-mechanics optomechanical cavity."""

__version__ = "0.1.0"

from .errors import (
    ConfigError,
    InstabilityError,
    PoleProximityError,
    ResponseError,
    SingularResponseError,
)
from .linsys import StabilityVerdict, build_drift, eigen_stability, susceptibility_numeric
from .noise import (
    BathOccupations,
    bose_occupation,
    effective_temperature,
    generalized_noise_coefficients,
    keldysh_and_teff,
    noise_covariance,
    qubit_polarization,
    scattering_and_reflectivity,
    symmetrized_spectrum,
)
from .opa import (
    OpaParams,
    negativity_window,
    opa_cpsf,
    opa_green,
    opa_self_energy,
    opa_susceptibility,
)
from .params import (
    DimensionlessParams,
    PhysicalDrive,
    SystemParams,
    enhanced_coupling,
    from_dimensionless,
    mean_fields,
    to_dimensionless,
)
from .response import (
    chi_elements,
    cpsf_on_resonance,
    greens,
    on_resonance_ratio,
    opa_mapped_cpsf,
    self_energy,
    single_mode_cpsf,
)
from .stability import (
    collective_cooperativities,
    negativity_check,
    optimize_paramps,
    quadrature_stable,
    stability_report,
)
