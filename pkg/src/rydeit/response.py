"""Steady-state EIT response of a single frequency class.

rho31 is the probe-transition coherence per unit probe Rabi frequency; its
imaginary and real parts set the attenuation coefficient and phase shift.
The series coefficients are the first-order expansion of that response in the
decoherence rate and two-photon detuning used by the closed-form predictions.
"""

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .params import EitParams


@dataclass(frozen=True)
class ProbeResponse:
    """Single-point optical response of the probe field."""

    chi: complex
    beta: float
    phi: float
    transmission: float

    @classmethod
    def from_chi(cls, chi, alpha, gamma=1.0):
        beta = alpha * gamma * chi.imag
        phi = 0.5 * alpha * gamma * chi.real
        return cls(chi=chi, beta=beta, phi=phi, transmission=math.exp(-beta))


@dataclass(frozen=True)
class SeriesCoeffs:
    """Expansion of rho31/Omega_p in gamma0 (a1, b1) and two-photon detuning
    (a2, b2) about the interaction-shifted resonance; a0/b0 are the
    imaginary/real parts there.  b1 = -a2 and a1 = b2 hold identically."""

    a0: float
    a1: float
    a2: float
    b0: float
    b1: float
    b2: float


def rho31(delta_p, delta_c, gamma0, omega_c, gamma=1.0):
    """Steady-state rho31 / Omega_p of the ladder system [1/gamma].

    (delta_p + delta_c + i gamma0) /
    (omega_c^2/2 - 2 (delta_p + i gamma/2)(delta_p + delta_c + i gamma0)).

    Im >= 0 whenever gamma0 >= 0: with num and den the numerator and
    denominator, Im(num * conj(den)) = gamma0 omega_c^2 / 2
    + gamma (delta^2 + gamma0^2) >= 0.  The denominator can vanish only when
    both gamma and gamma0 are zero.  Broadcasts over numpy arrays.
    """
    num = delta_p + delta_c + 1j * gamma0
    den = 0.5 * omega_c ** 2 - 2.0 * (delta_p + 0.5j * gamma) * num
    if np.any(den == 0):
        raise ValueError("degenerate response: denominator vanished "
                         "(needs gamma = 0 and gamma0 = 0)")
    return num / den


def beta0_phi0(eit: EitParams):
    """Attenuation coefficient and phase shift without the DDI."""
    chi = rho31(eit.delta_p, eit.delta_c, eit.gamma0, eit.omega_c, eit.gamma)
    ag = eit.alpha * eit.gamma
    return ag * chi.imag, 0.5 * ag * chi.real


def beta0_phi0_approx(eit: EitParams):
    """Leading-order beta0 and phi0 for omega_c^2 >> gamma0*gamma, delta*gamma.

    beta0 = 2 a g0 G / wc^2 - 16 a g0 d dc G / wc^4
    phi0  = a G d / wc^2 - 4 a g0 d G^2 / wc^4 + 4 a (g0^2 - d^2) dc G / wc^4
    """
    a, g = eit.alpha, eit.gamma
    g0, d, dc, wc2 = eit.gamma0, eit.delta, eit.delta_c, eit.omega_c ** 2
    if max(g0 * g, abs(d) * g) > 0.1 * wc2:
        warnings.warn("omega_c^2 >> gamma0*gamma, delta*gamma not satisfied; "
                      "approximation may be poor", stacklevel=2)
    beta0 = 2.0 * a * g0 * g / wc2 - 16.0 * a * g0 * d * dc * g / wc2 ** 2
    phi0 = (a * g * d / wc2
            - 4.0 * a * g0 * d * g ** 2 / wc2 ** 2
            + 4.0 * a * (g0 ** 2 - d ** 2) * dc * g / wc2 ** 2)
    return beta0, phi0


def rho22_in(eit: EitParams, exact=True):
    """Steady-state Rydberg population at the input face.

    Exact: wp^2 wc^2 / (4 d^2 G^2 + (wc^2 - 4 d dp)^2); the approximate form
    wp^2 / wc^2 applies when d*G and d*dp are small against wc^2 and is what
    the derived scales use.
    """
    wp2, wc2 = eit.omega_p_in ** 2, eit.omega_c ** 2
    if not exact:
        return wp2 / wc2
    d = eit.delta
    den = 4.0 * d ** 2 * eit.gamma ** 2 + (wc2 - 4.0 * d * eit.delta_p) ** 2
    if den == 0:
        raise ValueError("rho22_in denominator vanished")
    return wp2 * wc2 / den


def series_coeffs(omega, delta_c, omega_c, gamma=1.0) -> SeriesCoeffs:
    """First-order expansion coefficients of rho31/Omega_p at shift omega.

    The expansion point holds the probe detuning at -delta_c, so the
    two-photon detuning enters on the same footing as the shift:
    Im = a0 + a1 gamma0 + a2 delta + ..., Re = b0 + b1 gamma0 + b2 delta + ...
    match rho31(-delta_c, delta_c + omega + delta, gamma0, omega_c) to first
    order.
    """
    if omega < 0:
        raise ValueError("omega must be non-negative")
    g, wc2 = gamma, omega_c ** 2
    q = 4.0 * omega * delta_c + wc2
    den = 4.0 * omega ** 2 * g ** 2 + q ** 2
    a0 = 4.0 * omega ** 2 * g / den
    a1 = 2.0 * wc2 * (q ** 2 - 4.0 * omega ** 2 * g ** 2) / den ** 2
    a2 = 8.0 * omega * g * wc2 * q / den ** 2
    b0 = (8.0 * delta_c * omega ** 2 + 2.0 * omega * wc2) / den
    return SeriesCoeffs(a0=a0, a1=a1, a2=a2, b0=b0, b1=-a2, b2=a1)


def probe_response(eit: EitParams) -> ProbeResponse:
    """No-DDI response bundle for one parameter point."""
    chi = rho31(eit.delta_p, eit.delta_c, eit.gamma0, eit.omega_c, eit.gamma)
    return ProbeResponse.from_chi(complex(chi), eit.alpha, eit.gamma)
