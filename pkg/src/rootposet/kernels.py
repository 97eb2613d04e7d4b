"""Kernel selection.

The compiled extension is used when it imports; otherwise, or when
``ROOTPOSET_PURE_PYTHON=1`` is set, the pure-Python twin is used.
"""

from __future__ import annotations

import os

from . import _pykernels

if os.environ.get("ROOTPOSET_PURE_PYTHON", "") not in ("", "0"):
    _impl = _pykernels
else:
    try:
        from . import _kernels as _impl
    except ImportError:  # extension not built
        _impl = _pykernels

IMPLEMENTATION = _impl.IMPLEMENTATION
antichains = _impl.antichains
census = _impl.census
ideal = _impl.ideal
orbits = _impl.orbits
panyushev = _impl.panyushev
v2_dfs = _impl.v2_dfs
PRUNE_REASONS = _impl.PRUNE_REASONS


def backend(name):
    """Return the kernel module called ``name`` ("python" or "cython")."""
    if name == "python":
        return _pykernels
    if name == "cython":
        from . import _kernels

        return _kernels
    raise ValueError(f"unknown kernel backend {name!r}")
