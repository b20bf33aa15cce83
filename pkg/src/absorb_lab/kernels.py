"""Kernel backend selection.

The compiled extension is used when it imports; otherwise the numpy
fallback is used. Setting ``ABSORB_LAB_PURE=1`` forces the fallback.
"""

from __future__ import annotations

import os

if os.environ.get("ABSORB_LAB_PURE", "") not in ("", "0"):
    from . import _pykernels as _impl
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]
    except ImportError:  # extension not built
        from . import _pykernels as _impl

BACKEND: str = _impl.BACKEND

first_violation = _impl.first_violation
premise_pairs = _impl.premise_pairs
span_mask = _impl.span_mask
sum_mask = _impl.sum_mask
radical_mask = _impl.radical_mask
colon_ring_mask = _impl.colon_ring_mask
colon_module_mask = _impl.colon_module_mask
prime_test = _impl.prime_test
two_abs_violation = _impl.two_abs_violation
saturation_mask = _impl.saturation_mask

__all__ = [
    "BACKEND",
    "first_violation",
    "premise_pairs",
    "span_mask",
    "sum_mask",
    "radical_mask",
    "colon_ring_mask",
    "colon_module_mask",
    "prime_test",
    "two_abs_violation",
    "saturation_mask",
]
