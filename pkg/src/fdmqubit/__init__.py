"""Simultaneous single-qubit gates driven by a frequency-multiplexed comb.

Closed-form second-order Magnus angles and fidelities, a fixed-step RK4
propagator used as a numerical reference, and sweeps that rebuild the
standard fidelity-vs-parameter tables.
"""

__version__ = "0.1.0"

from .comb import FrequencyComb, PulseConfig, detuning, gamma_set, sinc
from .errors import (
    ConfigurationError,
    FDMError,
    PreconditionError,
    UnsupportedConfigurationError,
)
from .magnus import (
    MagnusAngles,
    ideal_unitary,
    lambda_closed_form,
    lambda_general,
    lambda_orthogonal,
    lambda_quasi_orthogonal,
    long_pulse_limit,
    magnus_unitary,
)
from .metrics import (
    FidelityResult,
    SlopeFit,
    analytic_fidelity,
    average_gate_fidelity,
    fit_infidelity_slope,
    spectrum_magnitude,
)
from .propagator import (
    Evolution,
    HamiltonianModel,
    IntegrationSettings,
    evolve,
    evolve_unitary,
    hamiltonian_at,
)
from .experiments import (
    Grid,
    SweepRecord,
    SweepSpec,
    gate_fidelity,
    run_fig2_spectrum,
    run_fig3,
    run_fig4_lambdas,
    run_fig5_slope,
    run_fig6,
    run_sweep,
)

__all__ = [
    "ConfigurationError",
    "Evolution",
    "FDMError",
    "FidelityResult",
    "FrequencyComb",
    "Grid",
    "HamiltonianModel",
    "IntegrationSettings",
    "MagnusAngles",
    "PreconditionError",
    "PulseConfig",
    "SlopeFit",
    "SweepRecord",
    "SweepSpec",
    "UnsupportedConfigurationError",
    "analytic_fidelity",
    "average_gate_fidelity",
    "detuning",
    "evolve",
    "evolve_unitary",
    "fit_infidelity_slope",
    "gamma_set",
    "gate_fidelity",
    "hamiltonian_at",
    "ideal_unitary",
    "lambda_closed_form",
    "lambda_general",
    "lambda_orthogonal",
    "lambda_quasi_orthogonal",
    "long_pulse_limit",
    "magnus_unitary",
    "run_fig2_spectrum",
    "run_fig3",
    "run_fig4_lambdas",
    "run_fig5_slope",
    "run_fig6",
    "run_sweep",
    "sinc",
    "spectrum_magnitude",
]
