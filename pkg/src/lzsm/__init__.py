"""Single-passage dynamics of a linearly driven two-level system.

Four cross-validated descriptions of the same passage through an avoided
level crossing: direct numerical integration, the exact solution in
parabolic cylinder functions, the asymptotic wave function with full phase,
and the adiabatic-impulse transfer-matrix model.
"""

from .core import (
    ConvergenceError,
    DomainError,
    DriveParams,
    Method,
    OverflowRangeError,
    PoleError,
    Spinor,
    Trajectory,
    TransferMatrix,
    from_dimensionless,
    hamiltonian,
    hamiltonian_dimensionless,
    lzsm_probability,
    to_dimensionless,
)
from .special import (
    CROSSOVER_RADIUS,
    PcfRegime,
    arg_gamma_one_minus_i_delta,
    log_gamma,
    pcf_asymptotic,
    pcf_d,
    select_regime,
)
from .majorana import (
    MajoranaSolution,
    Psi2Branch,
    c_delta,
    eval_psi1,
    eval_psi1_far,
    eval_psi2,
    general_solution,
)
from .zener import (
    ZenerCoefficients,
    coefficients_from_initial,
    eval_zener,
    eval_zener_asymptotic,
    ground_state_coefficients,
    p_of_tau,
    z_of_tau,
)
from .oracle import (
    IntegratorConfig,
    SaddleContourSpec,
    integrate,
    inverse_laplace_numeric,
    propagator,
)
from .impulse import (
    AdiabaticPhase,
    Side,
    ZetaMode,
    compose_passage,
    stokes_phase,
    transfer_matrix,
    u_ad,
    zeta,
)
from .analysis import (
    DeviationMap,
    SweepConfig,
    compare_dynamics,
    deviation_map,
    jump_time,
    jump_time_numeric,
)

__version__ = "0.1.0"
