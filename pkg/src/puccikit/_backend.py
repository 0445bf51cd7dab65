"""Kernel backend selection.

The native extension is preferred when importable; `PUCCI_BACKEND=python` or
`PUCCI_BACKEND=native` forces a lane (the latter raises if the extension is
missing). Both lanes compute bitwise-identical results.
"""

import os

from . import _kernels_py

_requested = os.environ.get("PUCCI_BACKEND", "").strip().lower()

if _requested == "python":
    _impl = _kernels_py
    BACKEND = "python"
elif _requested == "native":
    from . import _native as _impl  # noqa: F401  (ImportError is the contract)

    BACKEND = "native"
else:
    try:
        from . import _native as _impl

        BACKEND = "native"
    except ImportError:
        _impl = _kernels_py
        BACKEND = "python"

jacobi_eigh_batch = _impl.jacobi_eigh_batch
fd_sweep = _impl.fd_sweep

JACOBI_EPS = _kernels_py.JACOBI_EPS


def thread_cap():
    """Worker budget from PUCCI_THREADS (0 or unset = auto).

    Both kernels are single-threaded by design (deterministic reduction
    order); the cap is honored by any future parallel driver and is never
    echoed into canonical reports.
    """
    raw = os.environ.get("PUCCI_THREADS", "0").strip()
    try:
        value = int(raw)
    except ValueError:
        return 1
    if value <= 0:
        return os.cpu_count() or 1
    return value
