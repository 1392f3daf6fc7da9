"""Kernel dispatch: compiled extension when built, NumPy fallback otherwise.

Set ``DISCA_PURE_PYTHON=1`` in the environment to force the fallback.
``select()`` rebinds at runtime (used by the benchmark and the equivalence
tests); library code always calls through this module's attributes.
"""

import os

from . import _pykernels

try:
    from . import _ckernels
except ImportError:
    _ckernels = None

HAVE_COMPILED = _ckernels is not None

_EXPORTED = (
    "pairwise_distances",
    "dcov_stats",
    "g_matrix",
    "signed_diff_rows",
    "l1_terms",
    "sign_pullback",
    "admm_solve",
)


def select(name):
    """Bind this module's kernel functions to one implementation.

    ``name`` is "compiled" or "python". Returns the active implementation
    name. Selecting "compiled" without the built extension raises.
    """
    global ACTIVE
    if name == "compiled":
        if _ckernels is None:
            raise RuntimeError("compiled kernels are not available")
        impl = _ckernels
    elif name == "python":
        impl = _pykernels
    else:
        raise ValueError(f"unknown kernel implementation {name!r}")
    for fn in _EXPORTED:
        globals()[fn] = getattr(impl, fn)
    ACTIVE = impl.IMPL_NAME
    return ACTIVE


if HAVE_COMPILED and os.environ.get("DISCA_PURE_PYTHON", "") != "1":
    select("compiled")
else:
    select("python")
