"""Numeric kernels for the two hot loops: power iteration over the
word graph and pairwise relaxed transport distances between sentence
bags.

The compiled Cython module is preferred when it built successfully;
otherwise the NumPy fallback is used. Set SWR_KERNEL=pure or
SWR_KERNEL=cython to force a backend (cython raises if unavailable).
"""

import os

from swr._kernels import _pure

_requested = os.environ.get("SWR_KERNEL", "").strip().lower()

if _requested == "pure":
    _impl = _pure
    BACKEND = "pure"
else:
    try:
        from swr._kernels import _speed as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        if _requested == "cython":
            raise ImportError(
                "SWR_KERNEL=cython requested but the compiled kernel "
                "is not available; reinstall with a C compiler present"
            ) from None
        _impl = _pure
        BACKEND = "pure"

pagerank = _impl.pagerank
rwmd_pairwise = _impl.rwmd_pairwise

__all__ = ["BACKEND", "pagerank", "rwmd_pairwise"]
