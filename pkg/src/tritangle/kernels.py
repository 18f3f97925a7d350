"""Batch evaluation of per-state invariants, with backend selection.

The compiled extension (`tritangle._kernel_cy`) and the pure-numpy
fallback (`tritangle._kernel_np`) implement the same contract: given an
(n, 8) complex array of amplitudes, fill an (n, NCOLS) float64 array of
scalars in the column order below.  The compiled backend is preferred
when importable; set TRITANGLE_KERNEL=numpy or =cython to force one.
"""

from __future__ import annotations

import os

import numpy as np

COLUMNS = (
    "n",
    "re_d_schlafli",
    "im_d_schlafli",
    "re_d_poly",
    "im_d_poly",
    "tau_abc",
    "tau_a_tw",
    "tau_b_tw",
    "tau_c_tw",
    "tau_a_dm",
    "tau_b_dm",
    "tau_c_dm",
    "flip_bc_tw",
    "flip_ab_tw",
    "flip_ac_tw",
    "flip_bc_dm",
    "flip_ab_dm",
    "flip_ac_dm",
    "tau_ab",
    "tau_ac",
    "tau_bc",
    "xi",
    "omega",
    "lambda_sum",
    "sigma",
    "sigma_signed",
    "phi",
    "plucker_residual",
    "p_frob2",
    "ckw_residual",
    "kempe_residual",
)
COL = {name: i for i, name in enumerate(COLUMNS)}
NCOLS = len(COLUMNS)

from . import _kernel_np  # noqa: E402

try:
    from . import _kernel_cy
except ImportError:  # extension not built; the numpy fallback covers everything
    _kernel_cy = None

_BACKENDS = {"numpy": _kernel_np}
if _kernel_cy is not None:
    _BACKENDS["cython"] = _kernel_cy


def available_backends() -> tuple[str, ...]:
    return tuple(sorted(_BACKENDS))


def _default_backend() -> str:
    forced = os.environ.get("TRITANGLE_KERNEL", "").strip().lower()
    if forced:
        if forced not in _BACKENDS:
            raise RuntimeError(
                f"TRITANGLE_KERNEL={forced!r} requested but only {available_backends()} available"
            )
        return forced
    return "cython" if "cython" in _BACKENDS else "numpy"


def active_backend() -> str:
    return _default_backend()


def invariant_rows(amps: np.ndarray, backend: str | None = None) -> np.ndarray:
    """Per-state invariant scalars for a batch of amplitude vectors.

    amps: (n, 8) complex in abc binary order.  Returns (n, NCOLS) float64.
    """
    amps = np.ascontiguousarray(amps, dtype=complex)
    if amps.ndim == 1:
        amps = amps[None, :]
    if amps.ndim != 2 or amps.shape[1] != 8:
        raise ValueError(f"amps must have shape (n, 8), got {amps.shape}")
    name = backend or _default_backend()
    if name not in _BACKENDS:
        raise ValueError(f"unknown backend {name!r}; available: {available_backends()}")
    out = np.empty((amps.shape[0], NCOLS), dtype=np.float64)
    _BACKENDS[name].fill_rows(amps, out)
    return out
