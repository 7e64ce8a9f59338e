"""Border aggregation on the complete b-ary tree of height K.

Particles are released from the root one at a time and perform the
directed uniform walk; a particle freezes at the first node adjacent to
the frozen set, which initially consists of all depth-K nodes.  The run
ends when the root itself freezes; the particle that does it is counted.

Two discrete implementations exist deliberately.  The reference one keeps
the frozen set explicitly and tests adjacency by looking at children.
The fast one tracks the absorption boundary instead: the set of nodes a
walk could actually freeze at.  The boundary updates in O(1) per particle
because a node buried below a newer boundary node can never be reached
again, so it need not be removed.  Both consume the digit stream
identically, which the tests check particle by particle.

The coupled run replays the continuous-time aggregation with freeze
clocks taken from a percolation weight field, and returns its root freeze
time next to the field's leaves-first depth-K passage time; the two are
equal as floats, not merely in law, and the acceptance suite holds them
to exact equality.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

from .errors import CapacityError, ConfigError
from .ctdst import EdgeWeightField, recursion_sample, ybar_bottom_up
from .nodes import child_index, level_start, parent_index
from .randomness import RandomStream


@dataclass
class AggregationOutcome:
    count: int                          # particles released, last one included
    total_time: float | None = None     # root freeze time, continuous runs only
    trajectory: list[int] | None = None  # freeze sites in order, when recorded


def run_discrete(K: int, b: int, stream: RandomStream,
                 record_trajectory: bool = False) -> AggregationOutcome:
    """Particle count until the root freezes, via the absorption boundary.

    A walk freezes at the first node in the boundary set; depth K-1 nodes
    are in it from the start (their children begin frozen) and each freeze
    promotes the frozen node's parent into it.
    """
    if K < 1:
        raise ConfigError(f"tree height must be >= 1, got {K}")
    if b < 2:
        raise ConfigError(f"branching factor must be >= 2, got {b}")
    boundary: set[int] = set()
    trajectory = [] if record_trajectory else None
    count = 0
    while True:
        count += 1
        v, depth = 1, 0
        while v not in boundary and depth != K - 1:
            v = child_index(b, v, stream.digit(b))
            depth += 1
        if trajectory is not None:
            trajectory.append(v)
        if v == 1:
            return AggregationOutcome(count, None, trajectory)
        boundary.add(parent_index(b, v))


def run_reference(K: int, b: int, stream: RandomStream,
                  record_trajectory: bool = False) -> AggregationOutcome:
    """Definition-faithful run: explicit frozen set, adjacency by children.

    Slower than run_discrete; exists so the fast boundary bookkeeping has
    an independently written twin to be compared against draw for draw.
    """
    if K < 1:
        raise ConfigError(f"tree height must be >= 1, got {K}")
    frozen: set[int] = set()  # frozen nodes above depth K; depth-K implicit

    def adjacent(v: int, depth: int) -> bool:
        if depth == K - 1:
            return True
        return any(child_index(b, v, j) in frozen for j in range(b))

    trajectory = [] if record_trajectory else None
    count = 0
    while 1 not in frozen:
        count += 1
        v, depth = 1, 0
        while not adjacent(v, depth):
            v = child_index(b, v, stream.digit(b))
            depth += 1
        frozen.add(v)
        if trajectory is not None:
            trajectory.append(v)
    return AggregationOutcome(count, None, trajectory)


def run_continuous(K: int, b: int, stream: RandomStream) -> AggregationOutcome:
    """Aggregation at unit-rate Poisson arrivals: root freeze time included.

    The walk randomness and the arrival gaps come from disjoint portions
    of the stream (all walks first, then the gaps), so the count and the
    clock are independent given the count, as the model requires.
    """
    out = run_discrete(K, b, stream)
    waits = stream.exponential_array(out.count, 1.0)
    return AggregationOutcome(out.count, float(waits.sum()), out.trajectory)


def run_coupled(K: int, field: EdgeWeightField) -> tuple[float, float]:
    """Continuous aggregation on the height-(K+1) tree driven by ``field``.

    Every boundary node v freezes X_v time units after it entered the
    boundary, where X_v is the field weight; depth-K nodes enter at time
    zero.  Freezing promotes the parent into the boundary and strands the
    parent's other descendants, whose pending freezes are skipped when
    popped.  Returns (root freeze time, ybar_bottom_up of the same field);
    the construction makes the pair exactly equal, additions happening in
    the same order on both sides.
    """
    b = field.b
    if field.depth_cap < K:
        raise CapacityError(f"need weights to depth {K}, field caps at {field.depth_cap}")
    base = level_start(b, K)
    leaf_times = field.level(K)
    heap = [(float(leaf_times[i]), base + i, K) for i in range(b**K)]
    heapq.heapify(heap)
    promoted: set[int] = set()
    while True:
        t, v, depth = heapq.heappop(heap)
        if v == 1:
            return t, ybar_bottom_up(field, K)
        parent = parent_index(b, v)
        if parent in promoted:
            continue
        promoted.add(parent)
        heapq.heappush(heap, (t + field.weight(parent, depth - 1), parent, depth - 1))


def recursion_sample_xi(K: int, b: int, stream: RandomStream) -> float:
    """Sample the root freeze time via its distributional recursion.

    The freeze-time recursion is the passage-time recursion shifted by one
    level (a height-1 tree freezes after a single Exp(1) arrival), so this
    delegates to the same level-by-level fold with depth K-1.
    """
    if K < 1:
        raise ConfigError(f"tree height must be >= 1, got {K}")
    return recursion_sample(K - 1, b, stream)
