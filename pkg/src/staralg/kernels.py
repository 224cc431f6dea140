"""Backend selection for the fraction-free elimination kernels.

The compiled :mod:`staralg._core` is used when it was built; otherwise the
pure-Python :mod:`staralg._core_py`.  Setting ``STARALG_PURE_PYTHON=1``
forces the fallback.
"""
import os

from staralg import _core_py

if os.environ.get("STARALG_PURE_PYTHON", "") not in ("", "0"):
    _impl = _core_py
else:
    try:
        from staralg import _core as _impl
    except ImportError:
        _impl = _core_py

BACKEND = _impl.BACKEND
ff_rref_real = _impl.ff_rref_real
ff_rref_complex = _impl.ff_rref_complex
ff_hermitian = _impl.ff_hermitian
PD, PSD, INDEFINITE = _core_py.PD, _core_py.PSD, _core_py.INDEFINITE

__all__ = ["BACKEND", "ff_rref_real", "ff_rref_complex", "ff_hermitian", "PD", "PSD", "INDEFINITE", "use_backend"]


def use_backend(name):
    """Return the kernel module named ``python`` or ``cython`` (for benchmarks and tests)."""
    if name == "python":
        return _core_py
    if name == "cython":
        from staralg import _core

        return _core
    raise ValueError(f"unknown backend {name!r}")
