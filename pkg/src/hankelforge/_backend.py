"""Select the compiled kernels when available, the numpy fallback otherwise.

Set ``HANKELFORGE_BACKEND=python`` to force the fallback.
"""

import os

from . import _fallback

BACKENDS = {"python": _fallback}

try:
    from . import _kernels
except ImportError:  # extension not built
    _kernels = None
else:
    BACKENDS["cython"] = _kernels

_requested = os.environ.get("HANKELFORGE_BACKEND", "").strip().lower()
if _requested == "python" or _kernels is None:
    NAME = "python"
else:
    NAME = "cython"
kernels = BACKENDS[NAME]


def get(name=None):
    """Kernel module by name (``"cython"`` / ``"python"``); default is the active one."""
    if name is None:
        return kernels
    try:
        return BACKENDS[name]
    except KeyError:
        raise ValueError(f"backend {name!r} unavailable; have {sorted(BACKENDS)}") from None
