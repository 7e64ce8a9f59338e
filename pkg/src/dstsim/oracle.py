"""Exact small-instance distributions by brute-force enumeration.

Everything here runs in exact rational arithmetic, so "equal" below means
equal, not close.  Two independent chains are enumerated:

* the growth of a random digital tree, collapsed to its external depth
  profile (the counts of free nodes per depth are a sufficient statistic
  for the growth law, since a free node at depth d is hit with chance
  b**-d regardless of where it sits);

* the aggregation absorption process, collapsed to the shape of the region
  above the current freeze boundary, canonicalized by sorting children
  (the walk law is exchangeable over siblings).

``check_tc_exact`` then verifies that the particle-count law of the second
chain and the height-hitting law of the first are one and the same
distribution, which is the package's sharpest correctness anchor: the two
enumerations share no code beyond Fraction.
"""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass
from fractions import Fraction

from .errors import CapacityError

MAX_HEIGHT_ORACLE_K = 6
MAX_HEIGHT_ORACLE_N = 64

# The absorption chain collapses one node per particle, so this caps both
# the support of the particle count and the enumeration depth.
MAX_XI_ORACLE_NODES = 15


class Pmf(Mapping):
    """Probability mass function on integers with exact rational masses."""

    def __init__(self, probs: Mapping[int, Fraction]):
        cleaned = {}
        for k, v in probs.items():
            v = Fraction(v)
            if v < 0:
                raise ValueError(f"negative mass {v} at {k}")
            if v > 0:
                cleaned[int(k)] = v
        if sum(cleaned.values()) != 1:
            raise ValueError(f"masses sum to {sum(cleaned.values())}, not 1")
        self._p = dict(sorted(cleaned.items()))

    def __getitem__(self, k):
        return self._p[k]

    def __iter__(self):
        return iter(self._p)

    def __len__(self):
        return len(self._p)

    @property
    def support(self) -> list[int]:
        return list(self._p)

    def mean(self) -> Fraction:
        return sum(Fraction(k) * v for k, v in self._p.items())

    def cdf_at(self, n: int) -> Fraction:
        return sum(v for k, v in self._p.items() if k <= n)

    def as_floats(self) -> dict[int, float]:
        return {k: float(v) for k, v in self._p.items()}

    def __repr__(self):
        inner = ", ".join(f"{k}: {v}" for k, v in self._p.items())
        return f"Pmf({{{inner}}})"


def exact_height_cdf(K: int, n_max: int, b: int = 2) -> list[Fraction]:
    """P(external height of the n-item random digital tree >= K), n = 0..n_max.

    Dynamic program over external depth profiles (c_0, .., c_{K-1}): one
    growth step picks depth d with probability c_d * b**-d, turning that
    free node into an occupied one with b children one level down.
    Profiles that pick depth K-1 reach height K and are absorbed.
    """
    if K < 0 or n_max < 0 or b < 2:
        raise ValueError(f"bad arguments K={K}, n_max={n_max}, b={b}")
    if K > MAX_HEIGHT_ORACLE_K or n_max > MAX_HEIGHT_ORACLE_N:
        raise CapacityError(
            f"height oracle budget is K <= {MAX_HEIGHT_ORACLE_K}, "
            f"n_max <= {MAX_HEIGHT_ORACLE_N}; asked for K={K}, n_max={n_max}"
        )
    if K == 0:
        return [Fraction(1)] * (n_max + 1)

    start = (1,) + (0,) * (K - 1)
    dist: dict[tuple, Fraction] = {start: Fraction(1)}
    absorbed = Fraction(0)
    out = []
    for _ in range(n_max + 1):
        out.append(absorbed)
        nxt: dict[tuple, Fraction] = {}
        for profile, prob in dist.items():
            for d, count in enumerate(profile):
                if count == 0:
                    continue
                step = prob * count * Fraction(1, b**d)
                if d == K - 1:
                    absorbed += step
                else:
                    grown = list(profile)
                    grown[d] -= 1
                    grown[d + 1] += b
                    key = tuple(grown)
                    nxt[key] = nxt.get(key, Fraction(0)) + step
        dist = nxt
    return out


LEAF = ()


def _initial_region(K: int, b: int):
    """Complete b-ary shape of height K-1: the region above the start boundary."""
    state = LEAF
    for _ in range(K - 1):
        state = (state,) * b
    return state


def _region_steps(state, b: int):
    """All (probability, next state) moves of one particle walking this region.

    The walk descends uniformly and freezes at the first leaf; freezing a
    leaf collapses its parent's whole subtree to a single leaf one level up.
    """
    out = []
    for j, child in enumerate(state):
        if child == LEAF:
            # freezing any leaf child collapses this node itself
            out.append((Fraction(1, b), LEAF))
        else:
            for p, nxt_child in _region_steps(child, b):
                rebuilt = state[:j] + (nxt_child,) + state[j + 1:]
                out.append((p * Fraction(1, b), tuple(sorted(rebuilt))))
    return out


def exact_xi_pmf(K: int, b: int = 2) -> Pmf:
    """Exact law of the particle count until the root of T_K freezes.

    Enumerates the Markov chain on canonical region shapes.  Each particle
    performs one chain step; the particle that arrives once the region has
    shrunk to the bare root freezes the root and is counted.
    """
    if K < 1 or b < 2:
        raise ValueError(f"bad arguments K={K}, b={b}")
    nodes = (b**K - 1) // (b - 1)
    if nodes > MAX_XI_ORACLE_NODES:
        raise CapacityError(
            f"absorption oracle budget is {MAX_XI_ORACLE_NODES} collapsible "
            f"nodes, K={K} b={b} needs {nodes}"
        )

    steps_cache: dict[tuple, list] = {}

    def steps(state):
        if state not in steps_cache:
            steps_cache[state] = _region_steps(state, b)
        return steps_cache[state]

    dist = {_initial_region(K, b): Fraction(1)}
    pmf: dict[int, Fraction] = {}
    particles = 0
    while dist:
        particles += 1
        nxt: dict[tuple, Fraction] = {}
        for state, prob in dist.items():
            if state == LEAF:
                # the region is the bare root: this particle freezes it
                pmf[particles] = pmf.get(particles, Fraction(0)) + prob
                continue
            for p, nxt_state in steps(state):
                nxt[nxt_state] = nxt.get(nxt_state, Fraction(0)) + p * prob
        dist = nxt
    return Pmf(pmf)


@dataclass
class DualityReport:
    K: int
    b: int
    equal: bool
    rows: list[tuple[int, Fraction, Fraction, bool]]  # n, count CDF, height tail

    def render(self) -> str:
        lines = [
            f"K={self.K} b={self.b}: particle-count CDF vs height-hitting law",
            f"{'n':>4}  {'P(count <= n)':>16}  {'P(height_n >= K)':>18}  verdict",
        ]
        for n, lhs, rhs, ok in self.rows:
            lines.append(f"{n:>4}  {str(lhs):>16}  {str(rhs):>18}  {'EQUAL' if ok else 'DIFFER'}")
        lines.append("overall: " + ("EQUAL" if self.equal else "DIFFER"))
        return "\n".join(lines)


def check_tc_exact(K: int, b: int = 2) -> DualityReport:
    """Exact rational comparison of the two dual laws, over the full support."""
    xi = exact_xi_pmf(K, b)
    n_max = max(xi.support)
    heights = exact_height_cdf(K, n_max, b)
    rows = []
    equal = True
    for n in range(n_max + 1):
        lhs = xi.cdf_at(n)
        rhs = heights[n]
        ok = lhs == rhs
        equal = equal and ok
        rows.append((n, lhs, rhs, ok))
    return DualityReport(K, b, equal, rows)
