"""Backend selection: compiled kernels when available, pure Python otherwise.

``TNUMLAB_BACKEND`` forces the choice: ``c`` (fail if the extension is
missing), ``py``, or ``auto`` (default).
"""

from __future__ import annotations

import os

_choice = os.environ.get("TNUMLAB_BACKEND", "auto")
if _choice not in ("auto", "c", "py"):
    raise RuntimeError(f"TNUMLAB_BACKEND must be auto, c or py, not {_choice!r}")

if _choice == "py":
    from . import _kernels_py as kernels
else:
    try:
        from . import _kernels as kernels  # type: ignore[no-redef]
    except ImportError:
        if _choice == "c":
            raise
        from . import _kernels_py as kernels  # type: ignore[no-redef]

BACKEND = kernels.BACKEND_NAME


def get_kernels(name: str | None = None):
    """The active backend module, or an explicitly requested one."""
    if name is None or name == "auto":
        return kernels
    if name == "py":
        from . import _kernels_py
        return _kernels_py
    if name == "c":
        from . import _kernels
        return _kernels
    raise ValueError(f"unknown backend {name!r}")
