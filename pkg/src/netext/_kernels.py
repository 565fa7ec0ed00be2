"""Pick the Louvain local-move kernel at import.

The compiled extension is used when it was built; ``NETEXT_PURE_PYTHON=1``
forces the fallback.
"""
import os

from . import _pykernel

py_local_moves = _pykernel.local_moves
ext_local_moves = None

try:
    from ._ext._louvain import local_moves as ext_local_moves
except ImportError:
    pass

if ext_local_moves is not None and os.environ.get("NETEXT_PURE_PYTHON") != "1":
    local_moves = ext_local_moves
    BACKEND = "cython"
else:
    local_moves = py_local_moves
    BACKEND = "python"
