"""Kernel backend selection.

The compiled extension is used when it imports; otherwise the pure-Python
kernels take over. Set ``XDPKNAP_PURE=1`` to force the fallback.
"""

import importlib
import os
from types import ModuleType

from . import _pykernels


def load(name: str) -> ModuleType:
    """Return the kernel module called ``name`` ("cython" or "python")."""
    if name == "python":
        return _pykernels
    if name == "cython":
        return importlib.import_module("xdpknap._ckernels")
    raise ValueError(f"unknown kernel backend {name!r}")


def available() -> list[str]:
    names = ["python"]
    try:
        load("cython")
    except ImportError:
        pass
    else:
        names.insert(0, "cython")
    return names


def _select() -> ModuleType:
    if os.environ.get("XDPKNAP_PURE", "").strip() not in ("", "0"):
        return _pykernels
    try:
        return load("cython")
    except ImportError:
        return _pykernels


active = _select()
BACKEND = active.NAME
