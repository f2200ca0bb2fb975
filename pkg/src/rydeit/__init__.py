"""Mean-field optical response of weakly interacting Rydberg-EIT media.

Attenuation, phase shift and transmission spectra of a probe field whose
Rydberg level is shifted by dipole-dipole interactions, obtained by averaging
the steady-state susceptibility over the nearest-neighbor frequency-shift
distribution, together with the closed-form predictions this average admits
in the weak-interaction regime.
"""

from .analysis import (EpsilonFit, PeakEstimate, RegimeReport, SlopeFit,
                       SweepResult, find_peak, fit_epsilon, regime_report,
                       slope_vs_probe_power, sweep)
from .analytic import (AnalyticPrediction, c2_peak_coefficient,
                       delta_beta_phi_corrected, delta_beta_phi_ideal,
                       peak_shift_coupling_sweep, peak_shift_probe_sweep)
from .backend import active_backend
from .ddi import DdiResponse, beta_phi_ddi, delta_beta_phi_on_resonance
from .exceptions import (ContractViolationError, InsufficientParametersError,
                         NonConvergenceError, ParameterError,
                         PeakNotBracketedError, UnidentifiableFitError)
from .nnd import (ExpectResult, NndMeasure, expect, omega_of_r, p_omega,
                  p_omega_tail, p_r, sample_shift, shift_cdf)
from .params import DdiParams, DerivedScales, EitParams, derive_scales
from .response import (ProbeResponse, SeriesCoeffs, beta0_phi0,
                       beta0_phi0_approx, probe_response, rho22_in, rho31,
                       series_coeffs)

__version__ = "0.1.0"

__all__ = [
    "AnalyticPrediction", "ContractViolationError", "DdiParams",
    "DdiResponse", "DerivedScales", "EitParams", "EpsilonFit", "ExpectResult",
    "InsufficientParametersError", "NndMeasure", "NonConvergenceError",
    "ParameterError", "PeakEstimate", "PeakNotBracketedError",
    "ProbeResponse", "RegimeReport", "SeriesCoeffs", "SlopeFit",
    "SweepResult", "UnidentifiableFitError", "active_backend", "beta0_phi0",
    "beta0_phi0_approx", "beta_phi_ddi", "c2_peak_coefficient",
    "delta_beta_phi_corrected", "delta_beta_phi_ideal",
    "delta_beta_phi_on_resonance", "derive_scales", "expect", "find_peak",
    "fit_epsilon", "omega_of_r", "p_omega", "p_omega_tail", "p_r",
    "peak_shift_coupling_sweep", "peak_shift_probe_sweep", "probe_response",
    "regime_report", "rho22_in", "rho31", "sample_shift", "series_coeffs",
    "shift_cdf", "slope_vs_probe_power", "sweep",
]
