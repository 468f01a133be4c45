"""Reduction-engine backend selection.

The Groebner inner loop dominates runtime, so it exists twice: a Cython
extension (``_speedups``) and a pure-Python reference (``_pure``) with the
same entry points.  The compiled module is preferred when importable; set
``BLOWUPCHOW_PURE=1`` to force the fallback.  ``benchmarks/bench_kernel.py``
compares the two.
"""

import os

if os.environ.get("BLOWUPCHOW_PURE"):
    from . import _pure as _impl
    BACKEND = "pure"
else:
    try:
        from . import _speedups as _impl  # type: ignore[attr-defined]
        BACKEND = "compiled"
    except ImportError:
        from . import _pure as _impl
        BACKEND = "pure"

Context = _impl.Context
make_basis = _impl.make_basis
basis_terms = _impl.basis_terms
normal_form = _impl.normal_form

__all__ = ["BACKEND", "Context", "make_basis", "basis_terms", "normal_form"]
