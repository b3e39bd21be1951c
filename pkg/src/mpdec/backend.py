"""Kernel backend selection.

The correction kernels exist twice: a compiled extension
(``mpdec._speedups``) and a NumPy fallback (``mpdec._pykernels``).  The
compiled one is preferred when importable; ``MPDEC_BACKEND=python`` or
``MPDEC_BACKEND=compiled`` in the environment forces the choice (forcing
``compiled`` raises if the extension was not built).  Both expose the same
two functions and are kept interchangeable by the test suite.
"""

from __future__ import annotations

import os
from types import ModuleType

from . import _pykernels

_ENV_VAR = "MPDEC_BACKEND"
_BACKENDS: dict[str, ModuleType] = {"python": _pykernels}

try:
    from . import _speedups
except ImportError:
    _speedups = None
else:
    _BACKENDS["compiled"] = _speedups


def available_backends() -> tuple[str, ...]:
    return tuple(sorted(_BACKENDS))


def get_kernels(name: str | None = None) -> ModuleType:
    """Return a kernel module by name, or the active default."""
    if name is None:
        return _active
    try:
        return _BACKENDS[name]
    except KeyError:
        raise ValueError(
            f"unknown backend {name!r}; available: {available_backends()}"
        ) from None


def active_backend_name() -> str:
    return _active.BACKEND_NAME


def _select_default() -> ModuleType:
    forced = os.environ.get(_ENV_VAR)
    if forced:
        if forced not in _BACKENDS:
            raise ImportError(
                f"{_ENV_VAR}={forced!r} requested but only "
                f"{available_backends()} are available")
        return _BACKENDS[forced]
    return _BACKENDS.get("compiled", _pykernels)


_active = _select_default()
