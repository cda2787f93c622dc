"""Backend selection for the integer orbit kernels.

The compiled ``_ckernels`` extension is used when it imports; otherwise
the pure-Python twin is used.  Setting ``TENTMORPH_PURE_PYTHON=1`` forces
the fallback (the test suite runs both).
"""

from __future__ import annotations

import os
from types import ModuleType

from . import _pykernels


def _select() -> tuple[ModuleType, str]:
    if os.environ.get("TENTMORPH_PURE_PYTHON", "") not in ("", "0"):
        return _pykernels, "python"
    try:
        from . import _ckernels  # type: ignore[attr-defined]
    except ImportError:
        return _pykernels, "python"
    return _ckernels, "cython"


backend, BACKEND = _select()

commuter_value = backend.commuter_value
commuter_sweep = backend.commuter_sweep
orbit_numerators = backend.orbit_numerators
itinerary = backend.itinerary


def available_backends() -> dict[str, ModuleType]:
    found = {"python": _pykernels}
    try:
        from . import _ckernels  # type: ignore[attr-defined]
    except ImportError:
        pass
    else:
        found["cython"] = _ckernels
    return found
