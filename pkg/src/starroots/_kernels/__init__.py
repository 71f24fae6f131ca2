"""Kernel backend selection.

The compiled Cython module is used when it imports; otherwise the numpy
implementation takes over. Set ``STARROOTS_KERNELS=numpy`` to force the
fallback, or ``STARROOTS_KERNELS=cython`` to fail loudly when the compiled
module is missing.
"""
import os

from . import _pykernels

_choice = os.environ.get("STARROOTS_KERNELS", "auto").strip().lower()

if _choice not in ("auto", "cython", "numpy"):
    raise ImportError(f"STARROOTS_KERNELS must be auto, cython or numpy, got {_choice!r}")

if _choice == "numpy":
    backend = _pykernels
else:
    try:
        from . import _ckernels as backend
    except ImportError:
        if _choice == "cython":
            raise
        backend = _pykernels

BACKEND = backend.NAME
cmul = backend.cmul
p_pair = backend.p_pair
sigma_k = backend.sigma_k
horner = backend.horner
star_roots = backend.star_roots


def available_backends():
    """Return a dict of every importable backend module keyed by name."""
    out = {"numpy": _pykernels}
    try:
        from . import _ckernels
    except ImportError:
        pass
    else:
        out["cython"] = _ckernels
    return out
