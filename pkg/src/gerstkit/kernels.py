"""Kernel selection: compiled ``_kernels`` when built, else the pure-Python twin.

Set ``GERSTKIT_PURE=1`` to force the fallback.
"""

from __future__ import annotations

import os

if os.environ.get("GERSTKIT_PURE"):
    from gerstkit import _kernels_py as _impl
else:
    try:
        from gerstkit import _kernels as _impl  # type: ignore[attr-defined]
    except ImportError:  # extension not built
        from gerstkit import _kernels_py as _impl

BACKEND = "compiled" if _impl.__name__.endswith("._kernels") else "python"

add_terms = _impl.add_terms
scale_terms = _impl.scale_terms
mul_terms = _impl.mul_terms
diff_terms = _impl.diff_terms
norm = _impl.norm

__all__ = ["BACKEND", "add_terms", "diff_terms", "mul_terms", "norm", "scale_terms"]
