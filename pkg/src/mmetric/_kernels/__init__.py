"""Kernel backend selection.

The compiled extension is preferred when importable; the pure-Python
fallback is always available.  Set ``MMETRIC_PURE_PYTHON=1`` to force the
fallback (useful for benchmarking and debugging).
"""

from __future__ import annotations

import os

if os.environ.get("MMETRIC_PURE_PYTHON", "") == "1":
    from mmetric._kernels import pure as _impl
else:
    try:
        from mmetric._kernels import _fast as _impl  # type: ignore[no-redef]
    except ImportError:
        from mmetric._kernels import pure as _impl

BACKEND: str = _impl.BACKEND
scan_axioms = _impl.scan_axioms
shortest_path_closure = _impl.shortest_path_closure
enumerate_open_sets = _impl.enumerate_open_sets

__all__ = ["BACKEND", "scan_axioms", "shortest_path_closure", "enumerate_open_sets"]
