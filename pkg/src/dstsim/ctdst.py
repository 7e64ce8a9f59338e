"""Continuous-time tree growth: percolation weights and exponential clocks.

The percolation picture equips every node v with an independent waiting
time, exponential with rate b**-depth(v), and occupies v once the sum of
waits along the root path is down (at or below the clock).  The clock
picture grows a tree by ringing external nodes at rate b**-depth.  Both
are implemented independently; their agreement with each other and with
the discrete process observed at Poisson times is what the experiments
verify.

Weights are keyed to node indices through a salt, not drawn sequentially,
so a field can be materialized eagerly as per-level arrays or queried
lazily node by node with identical values, and two traversal orders over
one field always see one consistent random environment.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass

import numpy as np

from .errors import CapacityError, ConfigError, DepthCapExceeded
from .nodes import child_index, level_start
from .randomness import (
    RandomStream,
    exponential_from_bits,
    exponentials_from_bits,
    weight_u64,
    weights_u64,
)
from .trees import ShapeTree

# Largest eager field: all levels to depth 24 at b=2 is about 3.4e7 doubles.
MAX_EAGER_VALUES = 1 << 25


class EdgeWeightField:
    """Independent Exp(b**-depth) node weights, reproducible by (salt, index).

    ``depth_cap`` bounds the depths this field covers; accesses beyond it
    raise.  Eager mode stores one contiguous array per level; lazy mode
    computes single weights on demand from the keyed hash.  Both modes
    agree bit for bit.
    """

    def __init__(self, b: int, depth_cap: int, salt: int, eager: bool = True):
        if b < 2 or depth_cap < 0:
            raise ConfigError(f"bad field shape b={b}, depth_cap={depth_cap}")
        self.b = b
        self.depth_cap = depth_cap
        self.salt = salt
        self.eager = eager
        self._levels: list[np.ndarray | None] = [None] * (depth_cap + 1)
        if eager:
            if level_start(b, depth_cap + 1) - 1 > MAX_EAGER_VALUES:
                raise CapacityError(
                    f"eager field to depth {depth_cap} at b={b} exceeds "
                    f"{MAX_EAGER_VALUES} values; use lazy mode"
                )
            for d in range(depth_cap + 1):
                self._levels[d] = self._make_level(d)

    @classmethod
    def from_levels(cls, b: int, levels) -> "EdgeWeightField":
        """Field with explicitly given per-level weights, for crafted tests."""
        field = cls.__new__(cls)
        field.b = b
        field.depth_cap = len(levels) - 1
        field.salt = 0
        field.eager = True
        field._levels = []
        for d, lvl in enumerate(levels):
            arr = np.asarray(lvl, dtype=np.float64)
            if len(arr) != b**d:
                raise ConfigError(f"level {d} needs {b**d} weights, got {len(arr)}")
            field._levels.append(arr)
        return field

    def _make_level(self, d: int) -> np.ndarray:
        lo, hi = level_start(self.b, d), level_start(self.b, d + 1)
        bits = weights_u64(self.salt, np.arange(lo, hi, dtype=np.uint64))
        return exponentials_from_bits(bits, self.b ** float(-d))

    def level(self, d: int) -> np.ndarray:
        """All weights at depth d, indexed left to right."""
        if not 0 <= d <= self.depth_cap:
            raise DepthCapExceeded(f"depth {d} outside field cap {self.depth_cap}")
        if self._levels[d] is None:
            self._levels[d] = self._make_level(d)
        return self._levels[d]

    def weight(self, index: int, depth: int) -> float:
        """Single node weight; lazy fields compute it from the keyed hash."""
        if not 0 <= depth <= self.depth_cap:
            raise DepthCapExceeded(f"depth {depth} outside field cap {self.depth_cap}")
        lvl = self._levels[depth]
        if lvl is not None:
            return float(lvl[index - level_start(self.b, depth)])
        return exponential_from_bits(weight_u64(self.salt, index), self.b ** float(-depth))


def sample_weights(depth_cap: int, b: int, stream: RandomStream,
                   eager: bool = True) -> EdgeWeightField:
    """Fresh random field: one salt drawn from the stream keys every node."""
    return EdgeWeightField(b, depth_cap, stream.raw64(), eager=eager)


@dataclass
class PassageTimes:
    """First times the percolation reaches each depth, in depth order."""

    ybar: np.ndarray  # ybar[k] = min over depth-k nodes of the root-path sum

    def max_depth_within(self, t: float) -> int:
        """Largest k with ybar[k] <= t, or -1; the occupied height minus one."""
        reached = np.nonzero(self.ybar <= t)[0]
        return int(reached[-1]) if len(reached) else -1


def min_path_times(field: EdgeWeightField) -> PassageTimes:
    """Depth-by-depth minima of root-path sums over the whole field.

    Path sums accumulate top-down (parent sum plus own weight), matching
    their definition; each level is a vectorized extend-and-min step.
    """
    ybar = np.empty(field.depth_cap + 1)
    y = field.level(0).copy()
    ybar[0] = y[0]
    for d in range(1, field.depth_cap + 1):
        y = np.repeat(y, field.b) + field.level(d)
        ybar[d] = y.min()
    return PassageTimes(ybar)


def ybar_bottom_up(field: EdgeWeightField, K: int) -> float:
    """First time depth K is reached, evaluated leaves-first.

    Computes R_v = X_v + min(children R) up the tree, so the value at the
    root is built by the exact float operations the event-driven absorption
    run performs, making bit-level comparisons between the two meaningful.
    """
    if K > field.depth_cap:
        raise DepthCapExceeded(f"need depth {K}, field caps at {field.depth_cap}")
    r = field.level(K).copy()
    for d in range(K - 1, -1, -1):
        r = field.level(d) + r.reshape(-1, field.b).min(axis=1)
    return float(r[0])


def fpp_tree_at(t: float, field: EdgeWeightField) -> ShapeTree:
    """The tree occupied by time t: nodes whose root-path sum is <= t.

    Walks down from the root, pruning once the running sum exceeds t
    (sums only grow along a path).  A depth-cap node inside the occupied
    set means deeper occupation cannot be ruled out, which is an error,
    not a silent truncation.
    """
    tree = ShapeTree(field.b)
    root_w = field.weight(1, 0)
    if root_w > t:
        return tree
    stack = [(1, 0, root_w)]
    while stack:
        index, depth, y = stack.pop()
        if depth >= field.depth_cap:
            raise DepthCapExceeded(
                f"occupied set reaches the field cap {field.depth_cap}; "
                f"raise the cap to observe time {t}"
            )
        tree.add(index)
        for j in range(field.b - 1, -1, -1):
            c = child_index(field.b, index, j)
            yc = y + field.weight(c, depth + 1)
            if yc <= t:
                stack.append((c, depth + 1, yc))
    return tree


def fpp_height_at(t: float, b: int, stream: RandomStream, depth_cap: int = 62) -> int:
    """Height of the percolation tree at time t, drawing weights on the fly.

    Explores exactly the occupied nodes and their children, depth first,
    drawing each node's waiting time at first visit (all b children of a
    node in digit order, then the leftmost occupied subtree).  Equivalent
    in law to building a fresh field and thresholding it, without
    materializing anything.
    """
    if t < 0:
        raise ConfigError(f"observation time must be >= 0, got {t}")
    y_root = stream.exponential(1.0)
    if y_root > t:
        return 0
    max_depth = 0
    stack = [(0, y_root)]
    while stack:
        depth, y = stack.pop()
        if depth > max_depth:
            max_depth = depth
        if depth >= depth_cap:
            raise DepthCapExceeded(f"occupied set reached depth {depth_cap}")
        rate = b ** float(-(depth + 1))
        pending = []
        for _ in range(b):
            yc = y + stream.exponential(rate)
            if yc <= t:
                pending.append((depth + 1, yc))
        stack.extend(reversed(pending))
    return max_depth + 1


class ClockProcess:
    """Event-driven growth: every free node rings at rate b**-depth.

    Each free node draws its ring time when it appears; the earliest ring
    makes that node occupied and puts its children on the clock.  Ties
    (absent in practice, constructible in tests) go to the smallest index.
    """

    def __init__(self, b: int = 2, stream: RandomStream | None = None):
        if stream is None:
            stream = RandomStream(0, 0)
        self.b = b
        self.stream = stream
        self.tree = ShapeTree(b)
        self.time = 0.0
        self._events: list[tuple[float, int, int]] = []  # (ring, index, depth)
        self._schedule(1, 0)

    def _schedule(self, index: int, depth: int) -> None:
        ring = self.time + self.stream.exponential(self.b ** float(-depth))
        heapq.heappush(self._events, (ring, index, depth))

    def peek_time(self) -> float:
        return self._events[0][0]

    def step(self) -> tuple[float, int]:
        """Ring the earliest clock; returns (time, node that became occupied)."""
        ring, index, depth = heapq.heappop(self._events)
        self.time = ring
        self.tree.add(index)
        for j in range(self.b):
            self._schedule(child_index(self.b, index, j), depth + 1)
        return ring, index

    def run_until_time(self, t_end: float) -> ShapeTree:
        while self._events and self.peek_time() <= t_end:
            self.step()
        return self.tree

    def run_until_height(self, K: int) -> float:
        while self.tree.external_height() < K:
            self.step()
        return self.time


def clock_run_until_height(K: int, b: int, stream: RandomStream) -> tuple[ShapeTree, float]:
    """Grow by ringing clocks until height K; returns the tree and that time."""
    if K < 1:
        raise ConfigError(f"target height must be >= 1, got {K}")
    proc = ClockProcess(b, stream)
    t = proc.run_until_height(K)
    return proc.tree, t


def recursion_sample(K: int, b: int, stream: RandomStream) -> float:
    """Sample the depth-K passage time through its self-similar recursion.

    The recursion (value = b * min of b child copies + fresh Exp(1), depth
    0 copies are plain Exp(1)) unrolls to a complete b-ary tree of draws,
    evaluated here level by level, root's draw first.
    """
    if K < 0:
        raise ConfigError(f"depth must be >= 0, got {K}")
    levels = [stream.exponential_array(b**j, 1.0) for j in range(K + 1)]
    r = levels[K]
    for j in range(K - 1, -1, -1):
        r = b * r.reshape(-1, b).min(axis=1) + levels[j]
    return float(r[0])
