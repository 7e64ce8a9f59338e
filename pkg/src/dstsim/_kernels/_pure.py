"""Pure-Python batch kernels: the library simulators run in a loop.

These are the reference semantics for the compiled kernels and the
fallback when the extension is unavailable.  Each function consumes its
stream exactly as the compiled twin does.
"""

from __future__ import annotations

import numpy as np

from ..bam import run_coupled, run_discrete
from ..ctdst import ClockProcess, EdgeWeightField, clock_run_until_height, fpp_height_at
from ..dst import DstProcess, height_hitting_time
from ..errors import CapacityError
from ..nodes import level_start

# cap on per-replicate walk state, shared with the compiled backend so the
# two refuse the same calls
MAX_STATE_ENTRIES = 1 << 25


def _check_state_budget(K, b, what):
    if level_start(b, K) > MAX_STATE_ENTRIES:
        raise CapacityError(f"height {K} at b={b} needs too many {what} entries")


def xi_batch(K, b, n, stream):
    _check_state_budget(K, b, "boundary")
    out = np.empty(n, dtype=np.uint64)
    for i in range(n):
        out[i] = run_discrete(K, b, stream).count
    return out


def height_hit_batch(K, b, n, stream):
    _check_state_budget(K, b, "tree")
    out = np.empty(n, dtype=np.uint64)
    for i in range(n):
        out[i] = height_hitting_time(K, stream, b)
    return out


def grow_height_batch(b, sizes, stream):
    out = np.empty(len(sizes), dtype=np.uint64)
    for i, size in enumerate(sizes):
        out[i] = DstProcess(b, stream).grow_to_size(int(size)).height()
    return out


def clock_until_height_batch(K, b, n, stream):
    out = np.empty(n, dtype=np.float64)
    for i in range(n):
        out[i] = clock_run_until_height(K, b, stream)[1]
    return out


def clock_height_at_batch(t, b, n, stream):
    out = np.empty(n, dtype=np.uint64)
    for i in range(n):
        proc = ClockProcess(b, stream)
        out[i] = proc.run_until_time(t).external_height()
    return out


def fpp_height_at_batch(t, b, n, stream, depth_cap=62):
    out = np.empty(n, dtype=np.uint64)
    for i in range(n):
        out[i] = fpp_height_at(t, b, stream, depth_cap)
    return out


def coupled_batch(K, b, salts):
    if K > 24:
        raise CapacityError(f"coupled runs cap at depth 24, asked for {K}")
    n = len(salts)
    times = np.empty(n, dtype=np.float64)
    ybars = np.empty(n, dtype=np.float64)
    for i in range(n):
        field = EdgeWeightField(b, K, int(salts[i]), eager=True)
        times[i], ybars[i] = run_coupled(K, field)
    return times, ybars
