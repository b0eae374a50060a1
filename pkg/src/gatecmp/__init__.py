"""Compare cavity-QED Kerr phase gates with quantum Zeno gates.

Closed-form success probabilities for both gate types, independent
numerical oracles that check them, a deterministic tuning optimizer, the
tables behind the comparison figures, and the time-dependent coupling
profile that releases a photon as a Gaussian pulse.
"""

from gatecmp.errors import (
    AsymmetricParams,
    ConfigError,
    DegenerateTuning,
    EigenvalueTrackingFailure,
    EmptyFeasibleRegion,
    GateModelError,
    NonPositiveCoupling,
    NonPositiveRate,
    ParameterError,
    PerturbativityWarning,
    ResidualOutOfRange,
    StepCountTooSmall,
    UnknownFigure,
)
from gatecmp.optimize import (
    OPTIMIZE,
    Gate,
    OptimizationSpec,
    Optimum,
    maximize,
    optimize_gate,
    optimized_success,
    sweep_1d,
)
from gatecmp.oracle import cross_difference_shift, ground_eigenvalue, integrate_zeno, zeno_expm
from gatecmp.params import (
    BASELINE,
    DimensionalParams,
    GateEnvironment,
    PhaseTuning,
    ZenoTuning,
    load_config,
    parse_config,
    to_dimensional,
    to_dimensionless,
)
from gatecmp.phase import (
    PhaseGateResult,
    fourth_order_shift,
    phase_gate_time,
    phase_populations,
    phase_success,
    phase_success_dimensional,
)
from gatecmp.switch import SwitchProfile, SwitchSpec, coupling_profile, energy_audit, reverse_profile
from gatecmp.zeno import ZenoRates, ZenoTransition, swap_fidelity, zeno_rates, zeno_success

__version__ = "0.1.0"
