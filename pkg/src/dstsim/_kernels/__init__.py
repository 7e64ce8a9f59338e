"""Batch simulation kernels with a compiled core and a pure fallback.

The compiled extension is used when it imported cleanly and the
DSTSIM_PURE environment variable is not set to 1; otherwise every batch
function falls back to the pure implementations, which are thin loops
over the library-level simulators.  Both backends draw from the stream
in the same order, so for a given stream state they return identical
arrays and leave the stream in an identical state; the test suite holds
them to that bit for bit.
"""

from __future__ import annotations

import os

from . import _pure

BACKEND = "pure"
_impl = _pure

if os.environ.get("DSTSIM_PURE") != "1":
    try:
        from . import _cykernels as _impl  # type: ignore[no-redef]

        BACKEND = "compiled"
    except ImportError:
        _impl = _pure

xi_batch = _impl.xi_batch
height_hit_batch = _impl.height_hit_batch
grow_height_batch = _impl.grow_height_batch
clock_until_height_batch = _impl.clock_until_height_batch
clock_height_at_batch = _impl.clock_height_at_batch
fpp_height_at_batch = _impl.fpp_height_at_batch
coupled_batch = _impl.coupled_batch
