"""Kernel backend selection.

The compiled extension (``ranksel._kernels``, built from Cython) is used
when importable; otherwise the pure-Python twin (``ranksel._pure``) takes
over.  Selection happens once at import and can be forced:

* environment: ``RANKSEL_BACKEND=pure`` (or ``compiled`` / ``auto``)
* at runtime: :func:`use` / :func:`using`, mainly for tests and the
  backend-comparison benchmark.

Call sites read ``_backend.kernels`` at call time, so swapping the module
reference retargets every index object immediately.
"""

import contextlib
import os

from . import _pure

try:
    from . import _kernels as _compiled
except ImportError:
    _compiled = None


def _select(name):
    if name == "pure":
        return _pure
    if name == "compiled":
        if _compiled is None:
            raise RuntimeError("compiled kernels are not available")
        return _compiled
    if name == "auto":
        return _compiled if _compiled is not None else _pure
    raise ValueError(f"unknown backend {name!r} (expected auto, compiled, or pure)")


kernels = _select(os.environ.get("RANKSEL_BACKEND", "auto"))


def name():
    return "compiled" if kernels.IS_COMPILED else "pure"


def available():
    return ("compiled", "pure") if _compiled is not None else ("pure",)


def use(backend):
    """Switch the active backend; returns the previous backend's name."""
    global kernels
    previous = name()
    kernels = _select(backend)
    return previous


@contextlib.contextmanager
def using(backend):
    previous = use(backend)
    try:
        yield kernels
    finally:
        use(previous)
