"""Kernel selection: the compiled extension when available, else pure Python.

``BIFRAC_PURE_PYTHON=1`` forces the fallback (useful for benchmarking and for
debugging suspected kernel issues).
"""

import os

if os.environ.get("BIFRAC_PURE_PYTHON") == "1":
    from . import _pykernel as kernel

    BACKEND = "python"
else:
    try:
        from . import _ckernel as kernel  # type: ignore[no-redef]

        BACKEND = "compiled"
    except ImportError:
        from . import _pykernel as kernel  # type: ignore[no-redef]

        BACKEND = "python"
