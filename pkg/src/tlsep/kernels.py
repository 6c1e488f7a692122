"""Select the compiled kernels when available, else the pure-Python ones.

Set ``TLSEP_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _pykernels

INF = _pykernels.INF
LE_ZERO = _pykernels.LE_ZERO
bound_add = _pykernels.bound_add

_compiled = None
if os.environ.get("TLSEP_PURE_PYTHON", "") in ("", "0"):
    try:
        from . import _kernels as _compiled
    except ImportError:  # extension not built
        _compiled = None

if _compiled is not None:
    BACKEND = "cython"
    close_dbm = _compiled.close_dbm
    incompatible_pairs = _compiled.incompatible_pairs
else:
    BACKEND = "python"
    close_dbm = _pykernels.close_dbm
    incompatible_pairs = _pykernels.incompatible_pairs


def encode_bound(c: int, strict: bool) -> int:
    return 2 * c + (0 if strict else 1)


def decode_bound(b: int) -> tuple[int, bool]:
    """``(c, strict)`` of an encoded finite bound."""
    return b >> 1, not (b & 1)
