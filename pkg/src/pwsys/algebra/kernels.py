"""Select the compiled kernels when available, else the pure-Python ones.

Set ``PWSYS_PURE_PYTHON=1`` to force the fallback (used by the benchmark and
by the equivalence tests).
"""
from __future__ import annotations

import os

from . import _pykernels

_impl = _pykernels
if os.environ.get("PWSYS_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]
    except ImportError:  # extension not built
        _impl = _pykernels

BACKEND = _impl.BACKEND
mul_terms = _impl.mul_terms
add_scaled = _impl.add_scaled
univariate_images = _impl.univariate_images
gcd_modp = _impl.gcd_modp

python = _pykernels
