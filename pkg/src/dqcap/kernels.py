"""Backend selection for the grid kernel.

The compiled extension is used when it was built; otherwise the numpy
implementation. Setting ``DQCAP_PURE_PYTHON=1`` forces the fallback.
"""
import os

from . import _kernel_py

BACKEND = "python"
eval_grid = _kernel_py.eval_grid

if not os.environ.get("DQCAP_PURE_PYTHON"):
    try:
        from . import _kernel
    except ImportError:
        _kernel = None
    else:
        BACKEND = "cython"
        eval_grid = _kernel.eval_grid


def available_backends():
    backends = {"python": _kernel_py.eval_grid}
    try:
        from . import _kernel as compiled
    except ImportError:
        return backends
    backends["cython"] = compiled.eval_grid
    return backends
