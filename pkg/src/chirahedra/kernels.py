"""Kernel selection: the compiled extension when importable, else the pure-Python twin.

Set CHIRAHEDRA_PURE_PYTHON=1 to force the fallback.
"""

import os

from . import _kernels_py as python_backend

compiled_backend = None
if os.environ.get("CHIRAHEDRA_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as compiled_backend
    except ImportError:
        compiled_backend = None

backend = compiled_backend if compiled_backend is not None else python_backend
BACKEND = "cython" if compiled_backend is not None else "python"

orbit_in_box = backend.orbit_in_box
apply_map = backend.apply_map
