"""Reproducible randomness shared by the pure and compiled kernels.

Everything downstream draws through :class:`RandomStream`, a thin wrapper
over numpy's Philox counter-based generator.  The wrapper exists to pin the
exact bit-to-variate mapping, because the compiled kernels consume the same
generator through its C interface and the two paths must produce identical
streams:

* ``raw64``          one 64-bit word from the generator
* digit drawing      buffered rejection sampling, low bits first
* ``uniform``        ((x >> 11) + 1) * 2**-53, so U lies in (0, 1]
* ``exponential``    inversion, -log(U) / rate
* ``poisson``        chop-down inversion up to mean 30, transformed
                     rejection (Hormann's PTRS) above

Streams are keyed, not jumped: Philox takes a 128-bit key and we use
(master_seed, stream_key) so replicate r of experiment e gets an
independent stream without any coordination.  Keys are derived with the
splitmix64 finisher, which is also used to attach i.i.d. edge weights to
tree nodes by index (see ``weight_u64``) so that eager arrays and lazy
on-demand lookups see the same values.
"""

from __future__ import annotations

import math
import os

import numpy as np

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15

_SEED_ENV = "DSTSIM_SEED"


def mix64(z: int) -> int:
    """splitmix64 finisher: a 64-bit bijection with good avalanche."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def string_tag(name: str) -> int:
    """FNV-1a 64-bit hash of a label, for turning names into key material."""
    h = 0xCBF29CE484222325
    for byte in name.encode("utf-8"):
        h = ((h ^ byte) * 0x100000001B3) & MASK64
    return h


def derive_key(tag: int, replicate: int = 0) -> int:
    """Stream key for one replicate of one experiment."""
    return mix64(mix64(tag & MASK64) + replicate)


def weight_u64(salt: int, index: int) -> int:
    """Keyed 64-bit value attached to tree node ``index``.

    Pure function of (salt, index), so a lazily explored tree and an eagerly
    filled array agree on every node's weight.
    """
    return mix64(salt ^ ((index * GOLDEN) & MASK64))


def weights_u64(salt: int, indices: np.ndarray) -> np.ndarray:
    """Vectorized ``weight_u64`` over a uint64 index array."""
    with np.errstate(over="ignore"):
        z = np.uint64(salt) ^ (indices.astype(np.uint64) * np.uint64(GOLDEN))
        z = (z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
        z = (z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
    return z ^ (z >> np.uint64(31))


def u53_from_bits(x: int) -> float:
    """Map a 64-bit word to a uniform double in (0, 1]."""
    return ((x >> 11) + 1) * 2.0**-53


def exponential_from_bits(x: int, rate: float) -> float:
    return -math.log(u53_from_bits(x)) / rate


def exponentials_from_bits(bits: np.ndarray, rate: float) -> np.ndarray:
    """Vectorized inversion matching ``exponential_from_bits`` bit for bit."""
    u = ((bits >> np.uint64(11)).astype(np.float64) + 1.0) * 2.0**-53
    return -np.log(u) / rate


def default_master_seed() -> int:
    raw = os.environ.get(_SEED_ENV)
    if raw is None:
        return 0
    try:
        return int(raw, 0) & MASK64
    except ValueError:
        raise ValueError(f"{_SEED_ENV} must be an integer, got {raw!r}") from None


class RandomStream:
    """One independent Philox stream, addressed by (master_seed, stream_key).

    Holds a small bit pool for digit drawing so that b-ary digits cost
    amortized well under one 64-bit word each.  The pool state is exposed
    (``_pool``, ``_pool_bits``) because the compiled kernels pick it up,
    run, and write it back, keeping mixed Python/C histories identical to
    pure ones.
    """

    def __init__(self, master_seed: int, stream_key: int = 0):
        self.master_seed = master_seed & MASK64
        self.stream_key = stream_key & MASK64
        self.bit_generator = np.random.Philox(key=[self.master_seed, self.stream_key])
        self._raw = self.bit_generator.random_raw
        self._pool = 0
        self._pool_bits = 0

    @classmethod
    def for_experiment(cls, master_seed: int, name: str, replicate: int = 0) -> "RandomStream":
        return cls(master_seed, derive_key(string_tag(name), replicate))

    def clone(self) -> "RandomStream":
        """Independent copy that will replay this stream's future exactly."""
        twin = RandomStream(self.master_seed, self.stream_key)
        twin.bit_generator.state = self.bit_generator.state
        twin._pool = self._pool
        twin._pool_bits = self._pool_bits
        return twin

    def raw64(self) -> int:
        return int(self._raw())

    def raw64_array(self, n: int) -> np.ndarray:
        """n raw words in one call; same sequence as n single draws."""
        return self._raw(n)

    def uniform(self) -> float:
        return u53_from_bits(self.raw64())

    def exponential_array(self, n: int, rate: float = 1.0) -> np.ndarray:
        if rate <= 0:
            raise ValueError(f"rate must be positive, got {rate}")
        return exponentials_from_bits(self.raw64_array(n), rate)

    def exponential(self, rate: float = 1.0) -> float:
        if rate <= 0:
            raise ValueError(f"rate must be positive, got {rate}")
        return -math.log(self.uniform()) / rate

    def digit(self, b: int) -> int:
        """One uniform digit in [0, b), via buffered rejection sampling.

        Takes m = bit_length(b - 1) bits per attempt from the low end of the
        pool and rejects values >= b, so powers of two never reject.
        """
        m = (b - 1).bit_length()
        mask = (1 << m) - 1
        while True:
            if self._pool_bits < m:
                self._pool = self.raw64()
                self._pool_bits = 64
            v = self._pool & mask
            self._pool >>= m
            self._pool_bits -= m
            if v < b:
                return v

    def poisson(self, lam: float) -> int:
        if lam < 0 or not math.isfinite(lam):
            raise ValueError(f"poisson mean must be finite and >= 0, got {lam}")
        if lam == 0:
            return 0
        if lam <= 30.0:
            return self._poisson_chopdown(lam)
        return self._poisson_ptrs(lam)

    def _poisson_chopdown(self, lam: float) -> int:
        u = self.uniform()
        p = math.exp(-lam)
        f = p
        k = 0
        while u > f:
            k += 1
            p *= lam / k
            f += p
            if p == 0.0:
                break
        return k

    def _poisson_ptrs(self, lam: float) -> int:
        # Hormann's transformed rejection for large means: one uniform pair
        # per attempt, acceptance rate above 90% throughout our range.
        slam = math.sqrt(lam)
        loglam = math.log(lam)
        b = 0.931 + 2.53 * slam
        a = -0.059 + 0.02483 * b
        invalpha = 1.1239 + 1.1328 / (b - 3.4)
        vr = 0.9277 - 3.6224 / (b - 2.0)
        while True:
            u = self.uniform() - 0.5
            v = self.uniform()
            us = 0.5 - abs(u)
            k = math.floor((2.0 * a / us + b) * u + lam + 0.43)
            if us >= 0.07 and v <= vr:
                return int(k)
            if k < 0 or (us < 0.013 and v > us):
                continue
            if math.log(v) + math.log(invalpha) - math.log(a / (us * us) + b) <= (
                k * loglam - lam - math.lgamma(k + 1.0)
            ):
                return int(k)
