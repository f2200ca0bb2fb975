"""Closed-form predictions of the DDI-induced response.

Ideal and decoherence/detuning-corrected excess attenuation and phase shift,
and the EIT-peak-shift formulas for probe-frequency and coupling-frequency
sweeps.  All formulas are stated for attractive interactions (c6 < 0); the
repulsive case follows from the substitution rule (mirror the detunings,
negate the phase quantities), applied here automatically from the sign
carried by DdiParams.
"""

import math
from dataclasses import dataclass, replace

from .params import DdiParams, EitParams, derive_scales, mirror_detunings


@dataclass(frozen=True)
class AnalyticPrediction:
    """Closed-form DDI excess, its probe-power slopes, and the validity
    indicators (omega_a / EIT linewidth) ** (3/2 | 1/2) of the attenuation
    and phase formulas."""

    delta_beta: float
    delta_phi: float
    slope_beta: float
    slope_phi: float
    validity_beta: float
    validity_phi: float


def mirror_prediction(pred: AnalyticPrediction) -> AnalyticPrediction:
    """Negate the phase quantities; the output half of the positive-c6 rule.
    An involution."""
    return replace(pred, delta_phi=-pred.delta_phi, slope_phi=-pred.slope_phi)


def unit_power_slopes(eit: EitParams):
    """Corrected-formula slopes of (delta_beta, delta_phi) versus probe power,
    per unit sqrt(|c6|) n_atom epsilon.

    The detuning argument is the negated probe detuning (delta_c - delta),
    which is exact rather than first order when delta != 0.
    """
    g = eit.gamma
    dc = -eit.delta_p
    g0, d, wc2 = eit.gamma0, eit.delta, eit.omega_c ** 2
    w = math.hypot(g, 2.0 * dc)
    sm = math.sqrt(w - 2.0 * dc)
    sp = math.sqrt(w + 2.0 * dc)
    s_ddi = math.pi ** 2 * eit.alpha * g / (3.0 * eit.omega_c ** 3)
    slope_beta = 2.0 * s_ddi * (sm / w - 3.0 * g0 * sp / wc2 + 3.0 * d * sm / wc2)
    slope_phi = s_ddi * (sp / w - 3.0 * g0 * sm / wc2 - 3.0 * d * sp / wc2)
    return slope_beta, slope_phi


def _prediction(eit: EitParams, ddi: DdiParams, ideal: bool) -> AnalyticPrediction:
    work = eit
    if ideal:
        work = replace(eit, gamma0=0.0, delta_p=-eit.delta_c)
    if ddi.sign > 0:
        pred = _prediction_neg(mirror_detunings(work), ddi)
        return mirror_prediction(pred)
    return _prediction_neg(work, ddi)


def _prediction_neg(eit: EitParams, ddi: DdiParams) -> AnalyticPrediction:
    sb, sp = unit_power_slopes(eit)
    x = ddi.sqrt_c6_n_eps
    wp2 = eit.omega_p_in ** 2
    scales = derive_scales(eit, ddi)
    return AnalyticPrediction(
        delta_beta=sb * x * wp2,
        delta_phi=sp * x * wp2,
        slope_beta=sb * x,
        slope_phi=sp * x,
        validity_beta=scales.linewidth_ratio ** 1.5,
        validity_phi=scales.linewidth_ratio ** 0.5,
    )


def delta_beta_phi_ideal(eit: EitParams, ddi: DdiParams) -> AnalyticPrediction:
    """Ideal closed forms (zero decoherence, two-photon resonance):

    delta_beta = 2 S sqrt((W - 2 dc) / W^2) wp^2
    delta_phi  =   S sqrt((W + 2 dc) / W^2) wp^2,   W = sqrt(G^2 + 4 dc^2).

    gamma0 and the two-photon detuning of `eit` are ignored.
    """
    return _prediction(eit, ddi, ideal=True)


def delta_beta_phi_corrected(eit: EitParams, ddi: DdiParams) -> AnalyticPrediction:
    """Closed forms with the first-order decoherence and two-photon-detuning
    corrections; reduces exactly to the ideal prediction at gamma0 = delta = 0.
    """
    return _prediction(eit, ddi, ideal=False)


def peak_shift_probe_sweep(eit: EitParams, ddi: DdiParams) -> float:
    """EIT-peak position (two-photon detuning) when the probe frequency is
    swept at fixed coupling detuning.

    Valid while the shift stays well inside the EIT linewidth; always
    negative for c6 < 0 and independent of the optical depth.
    """
    g = eit.gamma
    dc = -eit.delta_c if ddi.sign > 0 else eit.delta_c
    wc = eit.omega_c
    w = math.hypot(g, 2.0 * dc)
    sm = math.sqrt(w - 2.0 * dc)
    sp = math.sqrt(w + 2.0 * dc)
    shift = (-math.pi ** 2 * ddi.sqrt_c6_n_eps / (12.0 * g * wc)
             * (3.0 * sm + (2.0 * dc * sm + g * sp) * wc ** 2 / w ** 3)
             * eit.omega_p_in ** 2)
    return -shift if ddi.sign > 0 else shift


def peak_shift_coupling_sweep(eit: EitParams, ddi: DdiParams) -> float:
    """EIT-peak position when the coupling frequency is swept at fixed probe
    detuning: -pi^2 sqrt(|c6|) n eps / (4 G wc) sqrt(Wp + 2 dp) wp^2."""
    g = eit.gamma
    dp = -eit.delta_p if ddi.sign > 0 else eit.delta_p
    wp = math.hypot(g, 2.0 * dp)
    shift = (-math.pi ** 2 * ddi.sqrt_c6_n_eps / (4.0 * g * eit.omega_c)
             * math.sqrt(wp + 2.0 * dp) * eit.omega_p_in ** 2)
    return -shift if ddi.sign > 0 else shift


def c2_peak_coefficient(eit: EitParams) -> float:
    """Curvature coefficient of the averaged absorption around the EIT peak,
    4 G / wc^4, with the shift-dependent remainder dropped (it is negligible
    in the weak-interaction regime)."""
    return 4.0 * eit.gamma / eit.omega_c ** 4
