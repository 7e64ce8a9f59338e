"""Finite b-ary tree shapes and their growth boundary.

A shape is the set of internal (occupied) nodes of a finite b-ary tree,
always closed under taking parents.  The external nodes are the first
unoccupied nodes along each branch: children of internal nodes that are
not themselves internal, or just the root when the shape is empty.  The
externals form an exact antichain cover, so the weights b**-depth over
them sum to one; that weight is the chance a fresh uniform digit string
reaches the given external first, and drives all growth dynamics here.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import ConfigError
from .nodes import (
    ROOT_INDEX,
    child_index,
    depth_of_index,
    digits_of_index,
    parent_index,
)


class ShapeTree:
    """Mutable, grow-only set of internal nodes of a b-ary tree."""

    def __init__(self, b: int = 2):
        if b < 2:
            raise ConfigError(f"branching factor must be >= 2, got {b}")
        self.b = b
        self._internal: set[int] = set()
        self._max_depth = -1

    def __len__(self) -> int:
        return len(self._internal)

    def __contains__(self, index: int) -> bool:
        return index in self._internal

    def internal_indices(self) -> list[int]:
        return sorted(self._internal)

    def external_height(self) -> int:
        """Depth of the deepest external node: max internal depth + 1, or 0."""
        return self._max_depth + 1

    def add(self, index: int) -> None:
        if index in self._internal:
            raise ValueError(f"node {index} is already internal")
        if index != ROOT_INDEX and parent_index(self.b, index) not in self._internal:
            raise ValueError(f"node {index} is not on the growth boundary")
        self._internal.add(index)
        d = depth_of_index(self.b, index)
        if d > self._max_depth:
            self._max_depth = d

    def external_indices(self) -> list[int]:
        if not self._internal:
            return [ROOT_INDEX]
        out = []
        for i in self._internal:
            for j in range(self.b):
                c = child_index(self.b, i, j)
                if c not in self._internal:
                    out.append(c)
        out.sort()
        return out

    def growth_measure(self) -> dict[int, Fraction]:
        """Exact hitting distribution of a fresh digit string over externals."""
        return {
            i: Fraction(1, self.b ** depth_of_index(self.b, i))
            for i in self.external_indices()
        }

    def internal_depth_counts(self) -> dict[int, int]:
        counts: dict[int, int] = {}
        for i in self._internal:
            d = depth_of_index(self.b, i)
            counts[d] = counts.get(d, 0) + 1
        return counts

    def walk_to_external(self, stream) -> int:
        """Follow fresh uniform digits from the root to the first free node."""
        i = ROOT_INDEX
        while i in self._internal:
            i = child_index(self.b, i, stream.digit(self.b))
        return i

    def digits_of(self, index: int) -> tuple[int, ...]:
        return digits_of_index(self.b, index)

    def copy(self) -> "ShapeTree":
        twin = ShapeTree(self.b)
        twin._internal = set(self._internal)
        twin._max_depth = self._max_depth
        return twin
