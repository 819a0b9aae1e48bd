"""Backend selection for the numeric kernels.

The compiled extension is used when importable; setting the environment
variable ``NORLUND_PURE_PYTHON=1`` forces the numpy fallback.
"""

import os

from . import _pykernels as python_backend

compiled_backend = None
if not os.environ.get("NORLUND_PURE_PYTHON"):
    try:
        from . import _ckernels as compiled_backend
    except ImportError:  # extension not built
        compiled_backend = None

_active = compiled_backend if compiled_backend is not None else python_backend
BACKEND = "cython" if compiled_backend is not None else "python"

horner2d = _active.horner2d
hurwitz_zeta = _active.hurwitz_zeta
polygamma = _active.polygamma
