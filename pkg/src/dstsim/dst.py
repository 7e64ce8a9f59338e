"""Random digital tree growth in discrete time, plus Poissonized sampling.

Two equivalent growth mechanisms are implemented side by side on purpose:

* route a stored item (a digit string) from the root to the first free
  node, as a real digital search tree insertion would;
* pick a free node directly with probability b**-depth via the directed
  random walk.

Their equal-in-law-ness is itself one of the verified claims, so neither
is expressed in terms of the other.  The Poissonized variant runs the same
growth at the arrival times of a unit-rate Poisson process, which only
matters through the Poisson-distributed size at a fixed observation time.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import ConfigError, RoutingError
from .randomness import RandomStream
from .trees import ShapeTree


@dataclass
class Item:
    """A key to insert: a digit string over {0, .., b-1}, possibly lazy.

    Finite items raise RoutingError when an insertion needs more digits
    than they carry; stream-backed items extend themselves on demand and
    never run out.
    """

    b: int
    digits: list[int] = field(default_factory=list)
    stream: RandomStream | None = None

    @classmethod
    def from_string(cls, b: int, text: str) -> "Item":
        digits = [int(ch) for ch in text]
        if any(not 0 <= d < b for d in digits):
            raise ConfigError(f"digits out of range for b={b}: {text!r}")
        return cls(b, digits)

    @classmethod
    def random(cls, b: int, stream: RandomStream) -> "Item":
        return cls(b, [], stream)

    def digit_at(self, pos: int) -> int:
        while pos >= len(self.digits):
            if self.stream is None:
                raise RoutingError(
                    f"item {''.join(map(str, self.digits))!r} exhausted at "
                    f"position {pos}"
                )
            self.digits.append(self.stream.digit(self.b))
        return self.digits[pos]


def insert_item(tree: ShapeTree, item: Item) -> ShapeTree:
    """Route the item along its digits to the first free node and occupy it."""
    if tree.b != item.b:
        raise ConfigError(f"item branching {item.b} != tree branching {tree.b}")
    node = 1
    depth = 0
    while node in tree:
        node = node * tree.b - (tree.b - 2) + item.digit_at(depth)
        depth += 1
    tree.add(node)
    return tree


class DstProcess:
    """Random digital tree grown one node at a time by the directed walk."""

    def __init__(self, b: int = 2, stream: RandomStream | None = None):
        if stream is None:
            stream = RandomStream(0, 0)
        self.tree = ShapeTree(b)
        self.stream = stream

    @property
    def size(self) -> int:
        return len(self.tree)

    def height(self) -> int:
        return self.tree.external_height()

    def grow_one(self) -> int:
        """Occupy one free node drawn from the growth measure; returns it."""
        target = self.tree.walk_to_external(self.stream)
        self.tree.add(target)
        return target

    def grow_to_size(self, n: int) -> "DstProcess":
        while self.size < n:
            self.grow_one()
        return self


def height_hitting_time(K: int, stream: RandomStream, b: int = 2) -> int:
    """Number of insertions until the tree's external height first reaches K.

    Grows node by node; the result is at least K and almost surely finite.
    """
    if K < 1:
        raise ConfigError(f"target height must be >= 1, got {K}")
    proc = DstProcess(b, stream)
    n = 0
    while proc.height() < K:
        proc.grow_one()
        n += 1
    return n


def sample_poissonized(t: float, stream: RandomStream, b: int = 2) -> ShapeTree:
    """Tree at observation time t: size Poisson(t), grown by the walk."""
    if t < 0:
        raise ConfigError(f"observation time must be >= 0, got {t}")
    n = stream.poisson(t)
    return DstProcess(b, stream).grow_to_size(n).tree


class ArrivalClock:
    """Unit-rate Poisson arrivals: strictly increasing times, Exp(1) gaps."""

    def __init__(self, stream: RandomStream):
        self.stream = stream
        self.time = 0.0
        self.count = 0

    def next_arrival(self) -> float:
        self.time += self.stream.exponential(1.0)
        self.count += 1
        return self.time
