"""Pure-numpy backend for the frequency-shift average of rho31.

Batched global-adaptive Gauss-Kronrod in u-space: every refinement round
splits the panels carrying the dominant error and evaluates all children in
one vectorised call.  Results are summed in panel order so they do not depend
on the refinement schedule.
"""

import math

import numpy as np

from . import _gkrule

BACKEND_NAME = "python"


def _chi(u, omega_a, delta_p, delta_c, gamma0, omega_c, gamma):
    """rho31/Omega_p at coupling detuning delta_c + omega(u), vectorised."""
    omega = _gkrule.omega_of_u(u, omega_a)
    num = delta_p + delta_c + omega + 1j * gamma0
    den = 0.5 * omega_c ** 2 - 2.0 * (delta_p + 0.5j * gamma) * num
    return num / den


def _eval_panels(lo, hi, args):
    """Kronrod value and |K-G| error of exp(-u) chi(u) on each [lo, hi]."""
    c = 0.5 * (lo + hi)[:, None]
    h = 0.5 * (hi - lo)[:, None]
    u = c + h * _gkrule.XK[None, :]
    g = np.exp(-u) * _chi(u, *args)
    k = (g * _gkrule.WK[None, :]).sum(axis=1) * h[:, 0]
    q = (g * _gkrule.WG[None, :]).sum(axis=1) * h[:, 0]
    diff = k - q
    return k, np.abs(diff.real), np.abs(diff.imag)


def avg_susceptibility(delta_p, delta_c, gamma0, omega_c, omega_a, gamma=1.0,
                       rtol=_gkrule.DEFAULT_RTOL, atol=_gkrule.DEFAULT_ATOL,
                       max_panels=_gkrule.MAX_PANELS):
    """Average rho31/Omega_p over the nearest-neighbor shift measure.

    Returns (re, im, err_re, err_im, panels, converged).
    """
    args = (omega_a, delta_p, delta_c, gamma0, omega_c, gamma)
    u_min, u_max = _gkrule.U_MIN, _gkrule.U_MAX

    chi_head = complex(_chi(u_min, *args))
    head = -math.expm1(-u_min) * chi_head
    probe = complex(_chi(0.5 * u_min, *args)) - chi_head
    head_err_re = u_min * abs(probe.real)
    head_err_im = u_min * abs(probe.imag)
    chi_tail = complex(_chi(u_max, *args))
    tail_err_re = math.exp(-u_max) * abs(chi_tail.real)
    tail_err_im = math.exp(-u_max) * abs(chi_tail.imag)

    lo = np.array(_gkrule.SEED_BREAKS[:-1])
    hi = np.array(_gkrule.SEED_BREAKS[1:])
    val, err_re, err_im = _eval_panels(lo, hi, args)

    while True:
        total = head + val.sum()
        tot_err_re = head_err_re + tail_err_re + err_re.sum()
        tot_err_im = head_err_im + tail_err_im + err_im.sum()
        ok = (tot_err_re <= max(atol, rtol * abs(total.real))
              and tot_err_im <= max(atol, rtol * abs(total.imag)))
        if ok or len(lo) >= max_panels:
            break
        score = err_re + err_im
        budget = max_panels - len(lo)
        split = score >= 0.25 * score.max()
        if split.sum() > budget:
            # keep only the worst `budget` panels to respect the cap
            order = np.argsort(score)[::-1][:budget]
            split = np.zeros_like(split)
            split[order] = True
        mid = 0.5 * (lo[split] + hi[split])
        new_lo = np.concatenate([lo[~split], lo[split], mid])
        new_hi = np.concatenate([hi[~split], mid, hi[split]])
        child_val, child_re, child_im = _eval_panels(
            np.concatenate([lo[split], mid]), np.concatenate([mid, hi[split]]), args)
        val = np.concatenate([val[~split], child_val])
        err_re = np.concatenate([err_re[~split], child_re])
        err_im = np.concatenate([err_im[~split], child_im])
        lo, hi = new_lo, new_hi

    order = np.argsort(lo, kind="stable")
    value = head + val[order].sum()
    e_re = head_err_re + tail_err_re + err_re[order].sum()
    e_im = head_err_im + tail_err_im + err_im[order].sum()
    converged = (e_re <= max(atol, rtol * abs(value.real))
                 and e_im <= max(atol, rtol * abs(value.imag)))
    return value.real, value.imag, e_re, e_im, len(lo), bool(converged)
