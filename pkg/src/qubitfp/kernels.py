"""Hot-kernel backend selection.

The compiled Cython extension (``qubitfp._ckernels``) is preferred when it
imported cleanly; otherwise the numpy reference module is used.  Set
``QUBITFP_KERNELS=python`` or ``QUBITFP_KERNELS=compiled`` to force a choice
(the latter raises if the extension is unavailable).

Both backends expose the same three functions with identical semantics:
``positive_matrix``, ``wplus_curve`` and ``repel_pack``.
"""

from __future__ import annotations

import os

from . import _pykernels

_choice = os.environ.get("QUBITFP_KERNELS", "auto")

if _choice not in ("auto", "compiled", "python"):
    raise RuntimeError(f"QUBITFP_KERNELS must be auto, compiled or python, not {_choice!r}")

if _choice == "python":
    _impl = _pykernels
    BACKEND = "python"
else:
    try:
        from . import _ckernels as _impl  # type: ignore[attr-defined]

        BACKEND = "compiled"
    except ImportError:
        if _choice == "compiled":
            raise
        _impl = _pykernels
        BACKEND = "python"

positive_matrix = _impl.positive_matrix
wplus_curve = _impl.wplus_curve
repel_pack = _impl.repel_pack
