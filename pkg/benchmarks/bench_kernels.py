"""Compare the compiled batch kernels against the pure-Python fallback.

Runs each kernel on identically seeded streams at a few sizes and prints
wall-clock times plus the speedup.  Outputs are checked equal along the
way, so this doubles as a coarse cross-backend smoke test at sizes the
unit suite does not visit.

Usage: python3 benchmarks/bench_kernels.py [--reps 2000] [--seed 0]
"""

import argparse
import sys
import time

import numpy as np

from dstsim._kernels import _pure
from dstsim.randomness import RandomStream

try:
    from dstsim._kernels import _cykernels
except ImportError:
    _cykernels = None


CASES = [
    ("xi K=10", "xi_batch", (10, 2), "n"),
    ("xi K=14", "xi_batch", (14, 2), "n"),
    ("height-hit K=8", "height_hit_batch", (8, 2), "n"),
    ("clock to K=6", "clock_until_height_batch", (6, 2), "n"),
    ("clock at t=16", "clock_height_at_batch", (16.0, 2), "n"),
    ("fpp at t=16", "fpp_height_at_batch", (16.0, 2), "n"),
]


def run_case(module, fn_name, head, n, seed, tag):
    stream = RandomStream.for_experiment(seed, tag, 0)
    fn = getattr(module, fn_name)
    t0 = time.perf_counter()
    out = fn(*head, n, stream)
    return time.perf_counter() - t0, out


def bench_grow(module, n, seed):
    sizes = np.full(n, 500, dtype=np.uint64)
    stream = RandomStream.for_experiment(seed, "bench-grow", 0)
    t0 = time.perf_counter()
    out = module.grow_height_batch(2, sizes, stream)
    return time.perf_counter() - t0, out


def bench_coupled(module, n, seed):
    salts = RandomStream.for_experiment(seed, "bench-salt", 0).raw64_array(n)
    t0 = time.perf_counter()
    out = module.coupled_batch(10, 2, salts)
    return time.perf_counter() - t0, out[0]


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--reps", type=int, default=2000)
    parser.add_argument("--seed", type=lambda s: int(s, 0), default=0)
    args = parser.parse_args(argv)

    if _cykernels is None:
        print("compiled backend not built; nothing to compare", file=sys.stderr)
        return 1

    print(f"{'kernel':<18} {'pure':>10} {'compiled':>10} {'speedup':>9}")
    rows = []
    for label, fn_name, head, _ in CASES:
        tag = f"bench-{fn_name}-{label}"
        t_pure, out_pure = run_case(_pure, fn_name, head, args.reps, args.seed, tag)
        t_comp, out_comp = run_case(_cykernels, fn_name, head, args.reps, args.seed, tag)
        if not np.array_equal(out_pure, out_comp):
            print(f"MISMATCH in {label}", file=sys.stderr)
            return 1
        rows.append((label, t_pure, t_comp))
    for label, runner in (("grow size=500", bench_grow), ("coupled K=10", bench_coupled)):
        t_pure, out_pure = runner(_pure, args.reps, args.seed)
        t_comp, out_comp = runner(_cykernels, args.reps, args.seed)
        if not np.array_equal(out_pure, out_comp):
            print(f"MISMATCH in {label}", file=sys.stderr)
            return 1
        rows.append((label, t_pure, t_comp))
    for label, t_pure, t_comp in rows:
        speed = t_pure / t_comp if t_comp > 0 else float("inf")
        print(f"{label:<18} {t_pure:>9.3f}s {t_comp:>9.3f}s {speed:>8.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
