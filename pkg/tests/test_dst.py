import math
from collections import Counter
from fractions import Fraction

import pytest

from dstsim.dst import ArrivalClock, DstProcess, Item, height_hitting_time, insert_item, sample_poissonized
from dstsim.errors import ConfigError, RoutingError
from dstsim.nodes import index_of_digits
from dstsim.oracle import exact_xi_pmf
from dstsim.randomness import RandomStream
from dstsim.stattests import chisq_gof
from dstsim.trees import ShapeTree


def idx(b, s):
    return index_of_digits(b, tuple(int(ch) for ch in s))


SIX_ITEMS = ["01011", "10011", "00101", "10110", "00011", "10100"]


def test_insert_six_items_hand_checked():
    t = ShapeTree(2)
    insert_item(t, Item.from_string(2, SIX_ITEMS[0]))
    assert t.internal_indices() == [1]
    insert_item(t, Item.from_string(2, SIX_ITEMS[1]))
    assert t.internal_indices() == sorted([1, idx(2, "1")])
    for s in SIX_ITEMS[2:]:
        insert_item(t, Item.from_string(2, s))
    expected = sorted(idx(2, s) for s in ["", "0", "1", "00", "10", "101"])
    assert t.internal_indices() == expected
    assert t.external_height() == 4


def test_item_exhaustion_raises():
    t = ShapeTree(2)
    insert_item(t, Item.from_string(2, "0"))
    insert_item(t, Item.from_string(2, "0"))
    # third item starting with 0 needs two digits to get past o and 0
    with pytest.raises(RoutingError):
        insert_item(t, Item.from_string(2, "0"))


def test_item_validation():
    with pytest.raises(ConfigError):
        Item.from_string(2, "012")
    with pytest.raises(ConfigError):
        insert_item(ShapeTree(3), Item.from_string(2, "0"))


def test_random_item_extends_lazily():
    item = Item.random(2, RandomStream(1, 2))
    d0 = item.digit_at(0)
    assert item.digit_at(0) == d0  # cached, not redrawn
    assert len(item.digits) == 1
    item.digit_at(4)
    assert len(item.digits) == 5


def test_grow_one_first_step_is_root():
    proc = DstProcess(2, RandomStream(3, 0))
    assert proc.grow_one() == 1
    assert proc.height() == 1


def test_second_insertion_always_depth_one():
    for rep in range(50):
        proc = DstProcess(2, RandomStream(4, rep))
        proc.grow_to_size(2)
        assert proc.height() == 2


def test_height_monotone_along_trajectory():
    proc = DstProcess(2, RandomStream(9, 0))
    heights = []
    for _ in range(80):
        proc.grow_one()
        heights.append(proc.height())
    assert heights == sorted(heights)


def _walk_route_shape_law(b, n):
    """Exact shape distribution after n walk-growth steps, by DP."""
    dist = {frozenset(): Fraction(1)}
    for _ in range(n):
        nxt = {}
        for shape, prob in dist.items():
            t = ShapeTree(b)
            t._internal = set(shape)
            t._max_depth = -1  # not needed for growth_measure
            for node, p in t.growth_measure().items():
                key = frozenset(shape | {node})
                nxt[key] = nxt.get(key, Fraction(0)) + prob * p
        dist = nxt
    return dist


def _item_route_shape_law(b, n):
    """Exact shape distribution from inserting n random items, by enumeration.

    Item k can consume at most k-1 digits, so enumerating prefixes of those
    lengths covers every outcome; each combination is equally likely.
    """
    lengths = list(range(n))
    combos = [[]]
    for length in lengths:
        combos = [c + [t] for c in combos for t in _all_strings(b, length)]
    total = Fraction(1, b ** sum(lengths))
    dist = {}
    for combo in combos:
        t = ShapeTree(b)
        for text in combo:
            insert_item(t, Item(b, list(text)))
        key = frozenset(t.internal_indices())
        dist[key] = dist.get(key, Fraction(0)) + total
    return dist


def _all_strings(b, length):
    out = [[]]
    for _ in range(length):
        out = [s + [d] for s in out for d in range(b)]
    return out


@pytest.mark.parametrize("b,n", [(2, 3), (2, 4), (3, 3)])
def test_item_and_walk_routes_same_exact_law(b, n):
    walk = _walk_route_shape_law(b, n)
    items = _item_route_shape_law(b, n)
    assert walk == items


def test_hitting_time_k1_k2_deterministic():
    for rep in range(30):
        assert height_hitting_time(1, RandomStream(6, rep)) == 1
        assert height_hitting_time(2, RandomStream(7, rep)) == 2
        assert height_hitting_time(2, RandomStream(8, rep), b=3) == 2
    with pytest.raises(ConfigError):
        height_hitting_time(0, RandomStream(6, 0))


def test_hitting_time_k3_matches_oracle():
    stream = RandomStream(10, 0)
    counts = Counter(height_hitting_time(3, stream) for _ in range(20000))
    assert set(counts) == {3, 4}
    r = chisq_gof(counts, exact_xi_pmf(3, 2))
    assert r.passed, r.as_dict()


def test_hitting_time_at_least_k():
    stream = RandomStream(11, 0)
    for K in (2, 3, 4, 5):
        for _ in range(20):
            assert height_hitting_time(K, stream) >= K


def test_poissonized_empty_at_zero():
    assert len(sample_poissonized(0.0, RandomStream(12, 0))) == 0
    with pytest.raises(ConfigError):
        sample_poissonized(-1.0, RandomStream(12, 0))


def test_poissonized_mean_size():
    stream = RandomStream(13, 0)
    t = 5.0
    n_reps = 20000
    total = sum(len(sample_poissonized(t, stream)) for _ in range(n_reps))
    mean = total / n_reps
    assert abs(mean - t) < 3 * math.sqrt(t / n_reps)


def test_arrival_clock():
    clock = ArrivalClock(RandomStream(14, 0))
    times = [clock.next_arrival() for _ in range(2000)]
    assert all(a < b for a, b in zip(times, times[1:]))
    assert clock.count == 2000
    gaps = [b - a for a, b in zip([0.0] + times, times)]
    assert abs(sum(gaps) / len(gaps) - 1.0) < 5 / math.sqrt(len(gaps))
