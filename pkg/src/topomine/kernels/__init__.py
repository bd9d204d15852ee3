"""Hot-kernel backend selection: compiled Cython module when built, else pure Python.

``TOPOMINE_PURE_PYTHON=1`` forces the fallback (used by the benchmark and by
tests that compare the two backends).
"""

import os

from topomine.kernels import _fallback

if os.environ.get("TOPOMINE_PURE_PYTHON"):
    _impl = _fallback
else:
    try:
        from topomine.kernels import _speedups as _impl
    except ImportError:
        _impl = _fallback

BACKEND = _impl.BACKEND
match_embeddings = _impl.match_embeddings
match_image_counts = _impl.match_image_counts
reduce_columns = _impl.reduce_columns
