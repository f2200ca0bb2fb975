"""Selection of the quadrature backend for the shift-average hot loop.

The compiled Cython kernel is preferred; the pure-numpy fallback is used when
the extension is missing or when RYDEIT_BACKEND=python is set.  Both expose
the same avg_susceptibility contract.
"""

import os
from collections import namedtuple

from . import _ddicore_py

AvgResult = namedtuple(
    "AvgResult", ["re", "im", "err_re", "err_im", "panels", "converged"])

_compiled = None
if os.environ.get("RYDEIT_BACKEND", "").lower() != "python":
    try:
        from . import _ddicore as _compiled
    except ImportError:
        _compiled = None

_active = _compiled if _compiled is not None else _ddicore_py


def active_backend() -> str:
    """Name of the backend in use: 'compiled' or 'python'."""
    return _active.BACKEND_NAME


def available_backends():
    """Mapping of backend name to its avg_susceptibility callable."""
    out = {"python": _ddicore_py.avg_susceptibility}
    if _compiled is not None:
        out["compiled"] = _compiled.avg_susceptibility
    return out


def avg_susceptibility(delta_p, delta_c, gamma0, omega_c, omega_a, gamma=1.0,
                       rtol=1e-8, atol=1e-12, max_panels=10000) -> AvgResult:
    """Average rho31/Omega_p over the nearest-neighbor shift measure."""
    return AvgResult(*_active.avg_susceptibility(
        delta_p, delta_c, gamma0, omega_c, omega_a, gamma,
        rtol, atol, max_panels))
