"""Numerical laboratory for the log-damped evolution u_tt + L u + L u_t = 0.

L = log(I - Laplacian) acts as the Fourier multiplier log(1 + |xi|^2); every
question about the flow reduces to radial frequency integrals, which this
package evaluates exactly per mode and verifies against the proven decay,
growth and profile estimates.
"""

from .asymptotics import RateFit, SandwichReport, energy_rate_sweep, fit_rate, verify_sandwich
from .modes import (
    EnergyDensity,
    ModeClosedForm,
    check_energy_identity,
    check_pointwise_estimates,
    energy_density,
    mode_evaluate,
    ode_oracle,
)
from .multiplier import Regime, RootPair, SymbolPoint, b_bounds_check, roots_at, symbol_at
from .profile import (
    Family,
    InitialDatum,
    ProfileErrorReport,
    decomposition_bounds,
    hat_u1,
    phi_at,
    profile_error,
)
from .quadrature import IntegralSpec, QuadratureResult, integrate, ip_ratio_curve, jp_ratio_curve
from .solver import Field, GridSpec, evolve, norms

__version__ = "0.1.0"

__all__ = [
    "EnergyDensity",
    "Family",
    "Field",
    "GridSpec",
    "InitialDatum",
    "IntegralSpec",
    "ModeClosedForm",
    "ProfileErrorReport",
    "QuadratureResult",
    "RateFit",
    "Regime",
    "RootPair",
    "SandwichReport",
    "SymbolPoint",
    "b_bounds_check",
    "check_energy_identity",
    "check_pointwise_estimates",
    "decomposition_bounds",
    "energy_density",
    "energy_rate_sweep",
    "evolve",
    "fit_rate",
    "hat_u1",
    "integrate",
    "ip_ratio_curve",
    "jp_ratio_curve",
    "mode_evaluate",
    "norms",
    "ode_oracle",
    "phi_at",
    "profile_error",
    "roots_at",
    "symbol_at",
    "verify_sandwich",
]
