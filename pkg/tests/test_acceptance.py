"""Acceptance suite: one test per numbered claim, names match the numbers.

Each test prints a single summary line (visible with -rA or on failure) and
asserts the pinned tolerance.  Heavy criteria need the compiled kernels to
meet their pinned runtime budgets and are skipped, with a reason, on the
pure fallback.  Shared sample sets are module fixtures so criteria 6 and 7
price the simulation once.

Tolerances here are frozen on purpose; loosenings need a recorded reason.
"""

import filecmp
import math
import subprocess
import sys
import time

import numpy as np
import pytest

from dstsim._kernels import BACKEND, coupled_batch, height_hit_batch, xi_batch
from dstsim.asympt import deviation_statistic, mk_value, prior_bracket
from dstsim.ctdst import EdgeWeightField, fpp_tree_at, min_path_times
from dstsim.experiments import run_replicated
from dstsim.oracle import check_tc_exact, exact_xi_pmf
from dstsim.randomness import RandomStream
from dstsim.stattests import chisq_gof, ks_two_sample, run_with_retry

ACC_SEED = 0
ALPHA = 1e-3

requires_compiled = pytest.mark.skipif(
    BACKEND != "compiled",
    reason="pinned runtime budget assumes the compiled kernels",
)


def report(num, label, ok, detail):
    print(f"criterion {num} ({label}): {'PASS' if ok else 'FAIL'} - {detail}")
    return ok


def tagged(tag, attempt):
    return tag if attempt == 0 else f"{tag}#retry{attempt}"


@pytest.fixture(scope="module")
def asym_samples():
    """1e4 particle counts per K in 12..20, shared by criteria 6 and 7."""
    out = {}
    for K in (12, 14, 16, 18, 20):
        cols = run_replicated("xi", 10_000, {"K": K, "b": 2}, ACC_SEED,
                              tag=f"acc-asym-K{K}")
        out[K] = cols["value"].astype(np.float64)
    return out


@requires_compiled
def test_criterion_1_pathwise_coupling():
    started = time.perf_counter()
    total = 0
    for K in range(13):
        salts = RandomStream.for_experiment(ACC_SEED, f"acc1-K{K}", 0).raw64_array(10_000)
        times, ybars = coupled_batch(K, 2, salts)
        assert np.array_equal(times, ybars), f"coupling broke at K={K}"
        total += len(salts)
    elapsed = time.perf_counter() - started
    ok = elapsed < 60.0
    assert report(1, "pathwise coupling", ok,
                  f"{total} exact equalities over K=0..12 in {elapsed:.1f}s")


def test_criterion_2_exact_duality():
    pairs = [(1, 2), (2, 2), (3, 2), (4, 2), (2, 3), (3, 3)]
    started = time.perf_counter()
    verdicts = {f"K{K}b{b}": check_tc_exact(K, b).equal for K, b in pairs}
    elapsed = time.perf_counter() - started
    ok = all(verdicts.values()) and elapsed < 60.0
    assert report(2, "exact rational duality", ok,
                  f"{verdicts} in {elapsed:.2f}s")


def test_criterion_3_exact_small_cases():
    ones = run_replicated("xi", 100_000, {"K": 1, "b": 2}, ACC_SEED,
                          tag="acc3-K1")["value"]
    twos = run_replicated("xi", 100_000, {"K": 2, "b": 2}, ACC_SEED,
                          tag="acc3-K2")["value"]
    deterministic = bool(np.all(ones == 1) and np.all(twos == 2))

    oracle = exact_xi_pmf(3, 2)
    from fractions import Fraction
    assert dict(oracle) == {3: Fraction(1, 2), 4: Fraction(1, 2)}

    def make(attempt):
        sample = run_replicated("xi", 100_000, {"K": 3, "b": 2}, ACC_SEED,
                                tag=tagged("acc3-K3", attempt))["value"]
        vals, cnts = np.unique(sample, return_counts=True)
        return chisq_gof({int(v): int(c) for v, c in zip(vals, cnts)},
                         oracle.as_floats(), n=len(sample), alpha=ALPHA,
                         name="chisq-xi3")

    test = run_with_retry(make, alpha=ALPHA)
    ok = deterministic and test.passed
    assert report(3, "exact small cases", ok,
                  f"K=1,2 deterministic={deterministic}, "
                  f"chisq p={test.p_value:.4g} retried={test.details['retried']}")


def _pathwise_identity_violations(t, n, tag):
    stream = RandomStream.for_experiment(ACC_SEED, tag, 0)
    bad = 0
    base_cap = max(10, int(math.log2(t)) + 10) if t > 0 else 10
    for _ in range(n):
        salt = stream.raw64()
        cap = base_cap
        while True:
            field = EdgeWeightField(2, cap, salt, eager=False)
            pt = min_path_times(field)
            if pt.ybar[-1] > t:
                break
            cap += 6  # keyed weights replay identically under a larger cap
        from_threshold = fpp_tree_at(t, field).external_height()
        from_passage = pt.max_depth_within(t) + 1
        if from_threshold != from_passage:
            bad += 1
    return bad


@requires_compiled
def test_criterion_4_construction_equivalence():
    started = time.perf_counter()
    tests = []
    for t in (2.0, 8.0, 32.0):
        primary = run_replicated("ct-compare", 100_000, {"t": t, "b": 2},
                                 ACC_SEED, tag=f"acc4-t{t}")
        cache = {0: primary}

        def columns_for(attempt, t=t):
            if attempt not in cache:
                cache[attempt] = run_replicated(
                    "ct-compare", 100_000, {"t": t, "b": 2}, ACC_SEED,
                    tag=tagged(f"acc4-t{t}", attempt))
            return cache[attempt]

        for a, b in (("growth", "fpp"), ("growth", "clock"), ("fpp", "clock")):
            def make(attempt, a=a, b=b, columns_for=columns_for):
                cols = columns_for(attempt)
                return ks_two_sample(cols[a], cols[b], alpha=ALPHA,
                                     name=f"ks-t{t}-{a}-{b}")
            tests.append(run_with_retry(make, alpha=ALPHA))
    laws_ok = all(item.passed for item in tests)

    violations = sum(
        _pathwise_identity_violations(t, n, f"acc4-path-t{t}")
        for t, n in ((2.0, 3334), (8.0, 3333), (32.0, 3333))
    )
    elapsed = time.perf_counter() - started
    ok = laws_ok and violations == 0 and elapsed < 300.0
    worst = min(item.p_value for item in tests)
    assert report(4, "construction equivalence", ok,
                  f"9 KS pairs min p={worst:.4g}, pathwise violations="
                  f"{violations}/10000, {elapsed:.1f}s")


@requires_compiled
def test_criterion_5_distributional_recursions():
    results = {}
    for target, direct_kind, rec_kind in (
        ("ybar", "ybar", "ybar-recursion"),
        ("xi-ct", "xi-ct", "xi-ct-recursion"),
    ):
        def make(attempt, direct_kind=direct_kind, rec_kind=rec_kind,
                 target=target):
            direct = run_replicated(
                direct_kind, 100_000, {"K": 8, "b": 2}, ACC_SEED,
                tag=tagged(f"acc5-{target}-direct", attempt))["value"]
            rec = run_replicated(
                rec_kind, 100_000, {"K": 8, "b": 2}, ACC_SEED,
                tag=tagged(f"acc5-{target}-rec", attempt))["value"]
            return ks_two_sample(direct, rec, alpha=ALPHA,
                                 name=f"ks-recursion-{target}")
        results[target] = run_with_retry(make, alpha=ALPHA)
    ok = all(item.passed for item in results.values())
    assert report(5, "distributional recursions", ok,
                  {k: f"p={v.p_value:.4g}" for k, v in results.items()})


@requires_compiled
def test_criterion_6_median_log_trend(asym_samples):
    started = time.perf_counter()
    devs = {}
    ok = True
    for K, samples in asym_samples.items():
        dev = deviation_statistic(samples, K)
        lo, hi = prior_bracket(K)
        median = float(np.sort(samples)[(len(samples) - 1) // 2])
        devs[K] = round(dev, 3)
        ok = ok and dev <= 5.0 and lo <= median <= hi
    elapsed = time.perf_counter() - started
    ok = ok and elapsed < 900.0
    assert report(6, "sharp median corridor", ok,
                  f"sqrt(K)*|median log2 - prediction| = {devs} "
                  f"(corridor 5.0 is an artifact calibration), {elapsed:.1f}s")


@requires_compiled
def test_criterion_7_mean_ratio_trend(asym_samples):
    rows = []
    for K in (14, 16, 18):
        samples = asym_samples[K]
        mk = mk_value(K).mK
        ratio = float(samples.mean()) / mk
        se = float(samples.std(ddof=1) / np.sqrt(len(samples))) / mk
        rows.append((K, ratio, se))
    in_window = all(0.7 <= ratio <= 1.5 for _, ratio, _ in rows)
    monotone = all(
        abs(r1 - 1.0) <= abs(r0 - 1.0) + math.hypot(s0, s1)
        for (_, r0, s0), (_, r1, s1) in zip(rows, rows[1:])
    )
    detail = ", ".join(f"K={K}: {ratio:.4f}+-{se:.4f}" for K, ratio, se in rows)
    ok = in_window and monotone
    assert report(7, "mean ratio corridor", ok,
                  f"{detail}; window [0.7,1.5] {'held' if in_window else 'VIOLATED'}, "
                  f"|ratio-1| non-increasing {'held' if monotone else 'VIOLATED'}")


def test_criterion_8_continuous_mean_identity():
    counts = run_replicated("xi", 100_000, {"K": 5, "b": 2}, ACC_SEED,
                            tag="acc8-count")["value"].astype(np.float64)
    times = run_replicated("xi-ct", 100_000, {"K": 5, "b": 2}, ACC_SEED,
                           tag="acc8-time")["value"]
    gap = abs(times.mean() - counts.mean())
    se = math.hypot(times.std(ddof=1) / math.sqrt(len(times)),
                    counts.std(ddof=1) / math.sqrt(len(counts)))
    ok = gap <= 3.0 * se
    assert report(8, "continuous/discrete mean identity", ok,
                  f"mean gap {gap:.4f} vs 3*SE {3 * se:.4f} at K=5")


def test_criterion_9_parallel_determinism(tmp_path):
    files = {}
    for jobs in (1, 8):
        out = tmp_path / f"xi-jobs{jobs}.csv"
        cmd = [sys.executable, "-m", "dstsim.cli", "bam-xi", "--K", "6",
               "--n", "5000", "--seed", "13", "--jobs", str(jobs),
               "--out", str(out)]
        proc = subprocess.run(cmd, capture_output=True, text=True,
                              cwd=tmp_path)
        assert proc.returncode == 0, proc.stderr
        files[jobs] = out

        ct = tmp_path / f"ct-jobs{jobs}.csv"
        cmd = [sys.executable, "-m", "dstsim.cli", "ct-compare", "--t", "4",
               "--n", "3000", "--seed", "13", "--jobs", str(jobs),
               "--out", str(ct)]
        proc = subprocess.run(cmd, capture_output=True, text=True,
                              cwd=tmp_path)
        assert proc.returncode == 0, proc.stderr
    single = filecmp.cmp(files[1], files[8], shallow=False)
    multi = all(
        filecmp.cmp(tmp_path / f"ct-jobs1-{name}.csv",
                    tmp_path / f"ct-jobs8-{name}.csv", shallow=False)
        for name in ("growth", "fpp", "clock")
    )
    ok = single and multi
    assert report(9, "parallel determinism", ok,
                  f"jobs 1 vs 8 byte-identical: single-column={single}, "
                  f"multi-column={multi}")
