from fractions import Fraction

import pytest

from dstsim.errors import ConfigError
from dstsim.nodes import ROOT_INDEX, index_of_digits
from dstsim.randomness import RandomStream
from dstsim.trees import ShapeTree


class FakeStream:
    """Feeds a scripted digit sequence to walk_to_external."""

    def __init__(self, digits):
        self._digits = list(digits)

    def digit(self, b):
        d = self._digits.pop(0)
        assert 0 <= d < b
        return d


def idx(b, s):
    return index_of_digits(b, tuple(int(ch) for ch in s))


def test_empty_tree():
    t = ShapeTree(2)
    assert len(t) == 0
    assert t.external_height() == 0
    assert t.external_indices() == [ROOT_INDEX]
    assert t.growth_measure() == {ROOT_INDEX: Fraction(1)}


def test_single_root():
    t = ShapeTree(2)
    t.add(ROOT_INDEX)
    assert t.external_height() == 1
    assert t.external_indices() == [2, 3]
    assert t.growth_measure() == {2: Fraction(1, 2), 3: Fraction(1, 2)}


def test_hand_built_shape():
    # internal nodes o, 0, 1, 00, 10, 101 in a binary tree
    t = ShapeTree(2)
    for s in ["", "0", "1", "00", "10", "101"]:
        t.add(idx(2, s))
    assert len(t) == 6
    assert t.external_height() == 4
    expected_external = sorted(
        idx(2, s) for s in ["01", "11", "000", "001", "100", "1010", "1011"]
    )
    assert t.external_indices() == expected_external
    gm = t.growth_measure()
    assert sum(gm.values()) == 1
    assert gm[idx(2, "01")] == Fraction(1, 4)
    assert gm[idx(2, "1011")] == Fraction(1, 16)
    assert t.internal_depth_counts() == {0: 1, 1: 2, 2: 2, 3: 1}


def test_add_validation():
    t = ShapeTree(2)
    with pytest.raises(ValueError):
        t.add(2)  # parent not internal yet
    t.add(ROOT_INDEX)
    with pytest.raises(ValueError):
        t.add(ROOT_INDEX)
    with pytest.raises(ValueError):
        t.add(4)  # grandchild, parent 2 still external
    t.add(2)
    t.add(4)
    assert t.external_height() == 3


def test_branching_validation():
    with pytest.raises(ConfigError):
        ShapeTree(1)


def test_walk_follows_digits():
    t = ShapeTree(2)
    for s in ["", "0", "1", "00", "10", "101"]:
        t.add(idx(2, s))
    # 1 -> 0 -> 1 -> 0 walks o, 1, 10, 101 and exits at 1010
    assert t.walk_to_external(FakeStream([1, 0, 1, 0])) == idx(2, "1010")
    # 0 -> 1 exits immediately below depth 2
    assert t.walk_to_external(FakeStream([0, 1])) == idx(2, "01")


def test_walk_on_empty_tree_returns_root():
    t = ShapeTree(3)
    assert t.walk_to_external(FakeStream([])) == ROOT_INDEX


@pytest.mark.parametrize("b", [2, 3])
def test_grown_tree_invariants(b):
    stream = RandomStream(2024, b)
    t = ShapeTree(b)
    for n in range(60):
        assert sum(t.growth_measure().values()) == 1
        ext = set(t.external_indices())
        target = t.walk_to_external(stream)
        assert target in ext
        t.add(target)
        assert len(t) == n + 1
    # externals and internals are disjoint, externals' parents are internal
    ext = t.external_indices()
    assert not set(ext) & set(t.internal_indices())


def test_copy_is_independent():
    t = ShapeTree(2)
    t.add(ROOT_INDEX)
    u = t.copy()
    u.add(2)
    assert len(t) == 1
    assert len(u) == 2
    assert t.external_height() == 1
    assert u.external_height() == 2
