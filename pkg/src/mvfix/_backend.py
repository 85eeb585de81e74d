"""Selects the directed-Hausdorff kernel at import.

The compiled extension is used when it was built and MVFIX_PURE_PYTHON is
unset; otherwise the pure-Python implementation.  Exact-mode inputs always go
through the pure-Python kernel.
"""
import os

from mvfix import _kernel_py

python_kernel = _kernel_py.directed_max_min
compiled_kernel = None

if not os.environ.get("MVFIX_PURE_PYTHON"):
    try:
        from mvfix._kernel import directed_max_min as compiled_kernel
    except ImportError:
        compiled_kernel = None

BACKEND = "cython" if compiled_kernel is not None else "python"
