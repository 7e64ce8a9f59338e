"""Node addressing in the infinite b-ary tree.

Nodes are addressed two ways, with O(1) conversion between them:

* a digit string over {0, .., b-1} read root-to-node (empty string = root);
* a heap-style integer index with root = 1, where child j of node i is
  ``b*i - (b - 2) + j``.  For b = 2 this is the familiar 2i / 2i+1 layout.

Depth-k nodes occupy the contiguous index range
[level_start(b, k), level_start(b, k+1)), which keeps per-level array
storage and child lookups branch-free.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

ROOT_INDEX = 1

# Indices are stored in uint64 arrays in the kernels; depth caps below keep
# every reachable index < 2**63.
MAX_INDEX = 1 << 63


def level_start(b: int, k: int) -> int:
    """First heap index at depth k: (b**k + b - 2) // (b - 1)."""
    return (b**k + b - 2) // (b - 1)


@lru_cache(maxsize=None)
def _level_starts(b: int, max_depth: int) -> tuple[int, ...]:
    return tuple(level_start(b, k) for k in range(max_depth + 2))


def max_depth_for_indexing(b: int) -> int:
    """Deepest level whose indices all fit below MAX_INDEX."""
    d = 0
    while level_start(b, d + 2) <= MAX_INDEX:
        d += 1
    return d


def child_index(b: int, i: int, j: int) -> int:
    return b * i - (b - 2) + j


def parent_index(b: int, i: int) -> int:
    return (i + b - 2) // b


def last_digit(b: int, i: int) -> int:
    return (i + b - 2) % b


def depth_of_index(b: int, i: int) -> int:
    if b == 2:
        return i.bit_length() - 1
    d = 0
    while level_start(b, d + 1) <= i:
        d += 1
    return d


def index_of_digits(b: int, digits) -> int:
    i = ROOT_INDEX
    for j in digits:
        i = child_index(b, i, j)
    return i


def digits_of_index(b: int, i: int) -> tuple[int, ...]:
    rev = []
    while i != ROOT_INDEX:
        rev.append(last_digit(b, i))
        i = parent_index(b, i)
    return tuple(reversed(rev))


@dataclass(frozen=True, order=True)
class NodePath:
    """Address of a node in the infinite b-ary tree.

    Ordering is (b, depth, index), which sorts each tree level contiguously
    and left-to-right within a level.
    """

    b: int
    depth: int
    index: int

    def __post_init__(self):
        if self.b < 2:
            raise ValueError(f"branching factor must be >= 2, got {self.b}")
        if self.depth < 0:
            raise ValueError("depth must be >= 0")
        lo = level_start(self.b, self.depth)
        hi = level_start(self.b, self.depth + 1)
        if not lo <= self.index < hi:
            raise ValueError(
                f"index {self.index} is not at depth {self.depth} for b={self.b}"
            )

    @classmethod
    def root(cls, b: int = 2) -> "NodePath":
        return cls(b, 0, ROOT_INDEX)

    @classmethod
    def from_digits(cls, b: int, digits) -> "NodePath":
        digits = tuple(int(d) for d in str(digits)) if isinstance(digits, str) else tuple(digits)
        if any(not 0 <= d < b for d in digits):
            raise ValueError(f"digits must lie in [0, {b}), got {digits}")
        return cls(b, len(digits), index_of_digits(b, digits))

    @classmethod
    def from_index(cls, b: int, index: int) -> "NodePath":
        return cls(b, depth_of_index(b, index), index)

    @property
    def digits(self) -> tuple[int, ...]:
        return digits_of_index(self.b, self.index)

    @property
    def is_root(self) -> bool:
        return self.index == ROOT_INDEX

    def parent(self) -> "NodePath":
        if self.is_root:
            raise ValueError("root has no parent")
        return NodePath(self.b, self.depth - 1, parent_index(self.b, self.index))

    def child(self, j: int) -> "NodePath":
        if not 0 <= j < self.b:
            raise ValueError(f"child digit must lie in [0, {self.b})")
        return NodePath(self.b, self.depth + 1, child_index(self.b, self.index, j))

    def is_prefix_of(self, other: "NodePath") -> bool:
        """The tree partial order: self lies on the root path of other."""
        if self.b != other.b or self.depth > other.depth:
            return False
        i = other.index
        for _ in range(other.depth - self.depth):
            i = parent_index(self.b, i)
        return i == self.index

    def __str__(self) -> str:
        return "".join(map(str, self.digits)) if self.depth else "o"
