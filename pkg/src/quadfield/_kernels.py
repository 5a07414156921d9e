"""Backend selection for the hot loops.

The compiled extension is used when it was built; otherwise, or when
``QUADFIELD_PURE_PYTHON`` is set to a non-empty value, the pure-Python
versions are used. Both give identical results.
"""

import os

from . import _pykernels

BACKEND = "python"
_impl = _pykernels

if not os.environ.get("QUADFIELD_PURE_PYTHON"):
    try:
        from . import _ckernels as _impl  # noqa: F811
        BACKEND = "cython"
    except ImportError:
        pass

first_square_y = _impl.first_square_y
cf_cycle = _impl.cf_cycle
reduced_forms = _impl.reduced_forms
rho_cycles = _impl.rho_cycles
