"""Kernel backend selection, fixed once at import time.

Set TORSAL_KERNEL=pure or TORSAL_KERNEL=compiled to force a backend;
by default the compiled extension is used when present and the pure
module otherwise.
"""

import os

from . import pure as _pure

_choice = os.environ.get("TORSAL_KERNEL", "").strip().lower()

if _choice == "pure":
    _impl = _pure
elif _choice in ("compiled", "cython"):
    from . import _speedups as _impl  # noqa: F401  (hard failure if absent)
else:
    try:
        from . import _speedups as _impl
    except ImportError:
        _impl = _pure

BACKEND = "pure" if _impl is _pure else "compiled"

rat_norm = _impl.rat_norm
rat_add = _impl.rat_add
rat_mul = _impl.rat_mul
terms_add = _impl.terms_add
terms_neg = _impl.terms_neg
terms_scale = _impl.terms_scale
terms_mul = _impl.terms_mul
terms_pow = _impl.terms_pow
terms_eval = _impl.terms_eval
