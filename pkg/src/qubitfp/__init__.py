"""One-bit and one-qubit equality fingerprinting in the SMP model.

Submodules: ``qlin`` (small complex linear algebra), ``classical`` (one-bit
schemes and their audits), ``strictq`` (one-qubit strict schemes), ``search``
(asymmetry optimization and Bloch-sphere packing), ``fileio`` and ``cli``.
``kernels.BACKEND`` reports whether the compiled extension or the numpy
fallback is active.
"""

from . import classical, fileio, qlin, search, strictq
from .kernels import BACKEND

__all__ = ["classical", "fileio", "qlin", "search", "strictq", "BACKEND"]
