"""Kernel selection: compiled extension when importable, pure Python otherwise.

Set ``QCONG_PURE_PYTHON=1`` to force the fallback.
"""
import os

if os.environ.get("QCONG_PURE_PYTHON"):
    from ._pykernels import *  # noqa: F401,F403
    from ._pykernels import BACKEND
else:
    try:
        from ._ckernels import *  # noqa: F401,F403
        from ._ckernels import BACKEND
    except ImportError:
        from ._pykernels import *  # noqa: F401,F403
        from ._pykernels import BACKEND

__all__ = [
    "BACKEND",
    "trim",
    "poly_mul",
    "poly_divmod",
    "poly_rem",
    "axpy",
    "mul_binomial",
    "geom_div",
]
