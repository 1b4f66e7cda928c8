"""Selection between the compiled kernels and the numpy fallback.

The compiled extension (``taskmeter._native``) is preferred whenever it
imports cleanly. Set ``TASKMETER_BACKEND=python`` or ``=native`` to force a
choice at import time, or call :func:`use` to switch at runtime (the
benchmark does this to time both sides).
"""

from __future__ import annotations

import os

from . import _kernels_py
from .errors import InvalidArgument

_BACKENDS = {"python": _kernels_py}

try:
    from . import _native

    _BACKENDS["native"] = _native
except ImportError:  # pragma: no cover - depends on the build
    _native = None


def available() -> tuple[str, ...]:
    """Names of the backends importable in this environment."""
    return tuple(sorted(_BACKENDS))


def use(name: str) -> str:
    """Make ``name`` the active backend; returns the previous one."""
    global _active
    if name not in _BACKENDS:
        raise InvalidArgument(
            f"unknown backend {name!r}; available: {', '.join(available())}"
        )
    previous = _active
    _active = name
    return previous


def active_name() -> str:
    return _active


def kernels():
    """The module providing ``sgd_epoch`` and ``mean_local_entropy``."""
    return _BACKENDS[_active]


_active = "native" if "native" in _BACKENDS else "python"
_requested = os.environ.get("TASKMETER_BACKEND")
if _requested:
    use(_requested)
