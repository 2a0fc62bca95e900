"""Backend selection for the hot loops.

The compiled extension is used when it imports; otherwise, or when the
environment variable ``CURVEFLOW_PURE_PYTHON=1`` is set, the pure-Python
implementations are used. Both expose the same four functions.
"""
import os

from . import _fallback

BACKEND = "python"
_impl = _fallback

if os.environ.get("CURVEFLOW_PURE_PYTHON") != "1":
    try:
        from . import _kernels as _impl  # noqa: F811
        BACKEND = "cython"
    except ImportError:
        _impl = _fallback


def backends():
    """Available implementations by name (the fallback is always present)."""
    found = {"python": _fallback}
    try:
        from . import _kernels
        found["cython"] = _kernels
    except ImportError:
        pass
    return found


def get(name=None):
    """Kernel module ``name``, or the one selected at import."""
    if name is None:
        return _impl
    return backends()[name]
