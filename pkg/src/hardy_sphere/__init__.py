"""Certified sharp constants for Hardy-Rellich and uncertainty-principle
inequalities on the sphere, via Gegenbauer/spherical-harmonic coefficient
algebra and truncated Rayleigh-quotient eigenproblems."""

__version__ = "0.1.0"

from .backend import BACKEND, COMPILED
from .certify import (
    CertificateReport,
    Lambda0Scan,
    SequenceTable,
    TailNotCertifiedError,
    bound_interp,
    direct_floor,
    direct_mode_bound,
    factor,
    factor_sq,
    factor_sq_interp,
    factor_sq_table,
    hardy_rellich_constant,
    min_mode_bound,
    mode_bound,
    mode_bound_limit,
    mode_bound_table,
    rayleigh_certify,
    scan_lambda0,
    sequence_table,
    stable_tail_index,
    tail_poly,
    tail_poly_grouped,
    third_difference,
    third_difference_prefactor,
)
from .functionals import (
    HardyMargins,
    HeatFamily,
    HeatLimits,
    UncertaintyConstant,
    UncertaintyReport,
    b_lambda,
    circle_counterexample,
    hardy_check,
    heat_limits,
    localized_energy,
    moment_first,
    moment_vector,
    sharpness_family,
    sharpness_ratio,
    uncertainty_constant,
    uncertainty_product,
    zero_moment_family,
)
from .gegenbauer import (
    GegenbauerParam,
    QuadratureRule,
    ZonalCoeffs,
    analyze,
    eval_gegenbauer,
    gauss_rule,
    gegenbauer_norm,
    synthesize,
)
from .sphere import (
    SphereCoeffs,
    SpectralMultiplier,
    apply_multiplier,
    basis_norm,
    coupling,
    eval_basis,
    gradient_norm_sq,
    harmonic_dim,
    sphere_quadrature,
    sphere_synthesize,
    x1_bilinear_form,
    zonal_coupling,
)

__all__ = [name for name in dir() if not name.startswith("_")]
