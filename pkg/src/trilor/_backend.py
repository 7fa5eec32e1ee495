"""Kernel backend selection.

Prefers the compiled extension, falls back to the pure-Python
implementations.  Both expose the same four functions with identical
algorithms; BACKEND says which one is live.
"""

try:
    from . import _core as _impl
    BACKEND = "compiled"
except ImportError:
    from . import _kernels_py as _impl
    BACKEND = "python"

jacobi_eigh = _impl.jacobi_eigh
quartic_roots = _impl.quartic_roots
svd_2x2 = _impl.svd_2x2
hyperdet_contraction = _impl.hyperdet_contraction
