"""Kernel dispatch: the compiled extension when importable, else pure Python.

Set ``MONOKIT_PURE_PYTHON=1`` to force the fallback.  The compiled kernels
work in 64-bit integers and raise ``OverflowError`` on overflow, in which case
the call is transparently redone in Python.
"""

from __future__ import annotations

import os

from . import _pykernels

try:
    if os.environ.get("MONOKIT_PURE_PYTHON"):
        raise ImportError("pure Python requested")
    from . import _ckernels
except ImportError:
    _ckernels = None

BACKEND = "compiled" if _ckernels is not None else "python"


def _dispatch(name: str):
    py = getattr(_pykernels, name)
    if _ckernels is None:
        return py
    c = getattr(_ckernels, name)

    def call(*args):
        try:
            return c(*args)
        except OverflowError:
            return py(*args)

    call.__name__ = name
    call.__doc__ = py.__doc__
    return call


freudenthal = _dispatch("freudenthal")
klimyk = _dispatch("klimyk")
convolve_dominant = _dispatch("convolve_dominant")
