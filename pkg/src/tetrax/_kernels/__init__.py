"""Kernel backend selection.

The compiled extension is preferred; set TETRAX_FORCE_PY=1 to force the
numpy fallback (used by the parity tests and the benchmark).
"""

import os

from . import _tables  # re-exported table module

if os.environ.get("TETRAX_FORCE_PY") == "1":
    from . import _blades_py as _impl

    BACKEND = "python"
else:
    try:
        from . import _blades_cy as _impl

        BACKEND = "cython"
    except ImportError:
        from . import _blades_py as _impl

        BACKEND = "python"

geometric_eta = _impl.geometric_eta
wedge = _impl.wedge
contract_left_eta = _impl.contract_left_eta
geometric_eta_batch = _impl.geometric_eta_batch
wedge_batch = _impl.wedge_batch
contract_left_eta_batch = _impl.contract_left_eta_batch

exterior_rep = _tables.exterior_rep
