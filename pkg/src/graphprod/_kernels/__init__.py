"""Hot kernels with a compiled backend and a pure-Python fallback.

The Cython extension is used when it was built and ``GRAPHPROD_PURE_PYTHON``
is unset; symbol alphabets of 64 or more always take the Python path.
"""

import os

from . import _pykernel

try:
    if os.environ.get("GRAPHPROD_PURE_PYTHON"):
        raise ImportError("pure Python forced")
    from . import _ckernel
except ImportError:
    _ckernel = None

BACKEND = "cython" if _ckernel is not None else "python"
_MAX_C_SYMBOLS = 64


def backends() -> dict:
    """Name -> kernel module, for cross-checking and benchmarks."""
    found = {"python": _pykernel}
    if _ckernel is not None:
        found["cython"] = _ckernel
    return found


if _ckernel is None:
    lex_order = _pykernel.lex_order
    merge_target = _pykernel.merge_target
    normal_word = _pykernel.normal_word
else:
    def lex_order(seq, masks):
        if len(masks) >= _MAX_C_SYMBOLS:
            return _pykernel.lex_order(seq, masks)
        return _ckernel.lex_order(seq, masks)

    def merge_target(seq, masks, v):
        if len(masks) >= _MAX_C_SYMBOLS:
            return _pykernel.merge_target(seq, masks, v)
        return _ckernel.merge_target(seq, masks, v)

    def normal_word(word, masks):
        if len(masks) >= _MAX_C_SYMBOLS:
            return _pykernel.normal_word(word, masks)
        return _ckernel.normal_word(word, masks)

__all__ = ["BACKEND", "backends", "lex_order", "merge_target", "normal_word"]
