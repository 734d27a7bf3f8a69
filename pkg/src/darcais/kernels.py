"""Backend selection for the numeric inner loops.

The compiled extension is preferred; the numpy fallback is used when it is
missing or when the environment variable ``DARCAIS_PURE_PYTHON`` is set to a
non-empty value other than ``0``.
"""
from __future__ import annotations

import os

from . import _kernels_py

_force_py = os.environ.get("DARCAIS_PURE_PYTHON", "") not in ("", "0")

if _force_py:
    _impl = _kernels_py
    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:
        _impl = _kernels_py
        BACKEND = "python"

sigma_sieve = _impl.sigma_sieve
lambert_real = _impl.lambert_real
lambert_complex = _impl.lambert_complex

__all__ = ["BACKEND", "sigma_sieve", "lambert_real", "lambert_complex"]
