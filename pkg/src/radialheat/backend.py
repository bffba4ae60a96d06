"""Kernel backend selection.

The compiled kernel is preferred when its extension module was built; the
pure-numpy kernel is the always-available fallback.  Both expose the same
``rk4_advance`` contract, so the simulator is backend-agnostic.  Setting
the environment variable ``RADIALHEAT_BACKEND=python`` forces the fallback
(useful for benchmarking and differential testing).
"""

from __future__ import annotations

import os

from . import _kernel_py

__all__ = ["get_kernel", "available_backends", "BACKEND_NAME"]

try:  # pragma: no cover - depends on the build environment
    from . import _kernel  # type: ignore[attr-defined]
except ImportError:  # pragma: no cover
    _kernel = None

_FORCED = os.environ.get("RADIALHEAT_BACKEND", "").strip().lower()


def available_backends() -> tuple:
    """Names of the kernels importable in this installation."""
    return ("compiled", "python") if _kernel is not None else ("python",)


def get_kernel(name: str = None):
    """Return the kernel module by name, or the preferred one by default."""
    if name is None:
        name = _FORCED or ("compiled" if _kernel is not None else "python")
    if name == "python":
        return _kernel_py
    if name == "compiled":
        if _kernel is None:
            raise ImportError("compiled kernel is not available in this build")
        return _kernel
    raise ValueError(f"unknown backend {name!r}")


BACKEND_NAME = get_kernel().NAME
