"""Backend selection for the truncated-product kernels.

The compiled extension is used when it was built; setting
``FGLTHETA_PURE_PYTHON=1`` forces the pure-Python fallback.
"""

import os

from fgltheta import _kernels_py

tri_index = _kernels_py.tri_index
tri_size = _kernels_py.tri_size

if os.environ.get("FGLTHETA_PURE_PYTHON"):
    _impl = _kernels_py
    BACKEND = "python"
else:
    try:
        from fgltheta import _kernels as _impl
        BACKEND = "cython"
    except ImportError:
        _impl = _kernels_py
        BACKEND = "python"

mul_trunc_mod = _impl.mul_trunc_mod
bivar_mul_trunc_mod = _impl.bivar_mul_trunc_mod
