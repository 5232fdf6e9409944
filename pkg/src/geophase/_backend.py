"""Integrator backend selection.

The compiled extension geophase._core is preferred when it imported
cleanly; geophase._pycore is the pure-Python twin.  Selection happens once
at import, can be forced with the environment variable
GEOPHASE_PURE_PYTHON=1, and can be overridden per call through the
``backend=`` argument of :func:`geophase.dynamics.integrate`.
"""

from __future__ import annotations

import os

from . import _pycore
from .errors import ValidationError

_BACKENDS = {"python": _pycore}

if os.environ.get("GEOPHASE_PURE_PYTHON") != "1":
    try:
        from . import _core

        _BACKENDS["cython"] = _core
    except ImportError:
        pass

DEFAULT_BACKEND = "cython" if "cython" in _BACKENDS else "python"


def available_backends() -> tuple[str, ...]:
    return tuple(sorted(_BACKENDS))


def get_backend(name: str | None = None):
    """Return the integrator module for ``name`` (default: best available)."""
    if name is None:
        name = DEFAULT_BACKEND
    try:
        return _BACKENDS[name]
    except KeyError:
        raise ValidationError(
            f"unknown integrator backend {name!r}; available: "
            f"{', '.join(available_backends())}") from None
