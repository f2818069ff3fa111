"""Kernel backend selection.

The compiled extension is used when it imports; set ``HYPERSPEC_PURE_PYTHON=1``
to force the pure-Python fallback.
"""

import os

from hyperspec import _pykernels

BACKEND = "python"
if os.environ.get("HYPERSPEC_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from hyperspec import _ckernels as _impl
        BACKEND = "cython"
    except ImportError:  # extension not built
        _impl = _pykernels
else:
    _impl = _pykernels

count_closed_walks = _impl.count_closed_walks
edge_apply = _impl.edge_apply
canonical_mask = _impl.canonical_mask
uniform_classes = _impl.uniform_classes
probe_classes = _impl.probe_classes
colex_slots = _pykernels.colex_slots

__all__ = ["BACKEND", "count_closed_walks", "edge_apply", "canonical_mask",
           "uniform_classes", "probe_classes", "colex_slots"]
