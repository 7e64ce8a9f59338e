"""Deterministic replicate fan-out and result-file emission.

Replicates are split into fixed chunks of 256 and every chunk gets its own
keyed stream, so sample number i is the same no matter how many worker
processes run or in what order chunks finish.  Workers are plain processes;
chunk outputs are concatenated in chunk order.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from . import _kernels
from .ctdst import EdgeWeightField, recursion_sample, ybar_bottom_up
from .errors import ConfigError
from .randomness import RandomStream

CHUNK = 256


def chunk_sizes(n):
    """Partition n replicates into CHUNK-sized pieces (last may be short)."""
    if n < 1:
        raise ConfigError(f"replicate count must be >= 1, got {n}")
    out = []
    done = 0
    while done < n:
        size = min(CHUNK, n - done)
        out.append(size)
        done += size
    return out


def _sample_xi(stream, size, params):
    counts = _kernels.xi_batch(params["K"], params["b"], size, stream)
    return {"value": counts}


def _sample_xi_ct(stream, size, params):
    counts = _kernels.xi_batch(params["K"], params["b"], size, stream)
    waits = stream.exponential_array(int(counts.sum()))
    offsets = np.zeros(size, dtype=np.int64)
    np.cumsum(counts[:-1].astype(np.int64), out=offsets[1:])
    times = np.add.reduceat(waits, offsets)
    return {"value": times, "count": counts}


def _sample_height_hit(stream, size, params):
    hits = _kernels.height_hit_batch(params["K"], params["b"], size, stream)
    return {"value": hits}


def _sample_grow(stream, size, params):
    sizes = np.full(size, params["size"], dtype=np.uint64)
    heights = _kernels.grow_height_batch(params["b"], sizes, stream)
    return {"value": heights}


def _sample_ct_compare(stream, size, params):
    t = params["t"]
    b = params["b"]
    counts = np.array([stream.poisson(t) for _ in range(size)], dtype=np.uint64)
    growth = _kernels.grow_height_batch(b, counts, stream)
    fpp = _kernels.fpp_height_at_batch(t, b, size, stream)
    clock = _kernels.clock_height_at_batch(t, b, size, stream)
    return {"growth": growth, "fpp": fpp, "clock": clock}


def _sample_ybar(stream, size, params):
    K = params["K"]
    b = params["b"]
    out = np.empty(size, dtype=np.float64)
    for i in range(size):
        field = EdgeWeightField(b, K, stream.raw64(), eager=True)
        out[i] = ybar_bottom_up(field, K)
    return {"value": out}


def _sample_ybar_recursion(stream, size, params):
    K = params["K"]
    b = params["b"]
    out = np.empty(size, dtype=np.float64)
    for i in range(size):
        out[i] = recursion_sample(K, b, stream)
    return {"value": out}


def _sample_xi_ct_recursion(stream, size, params):
    # the waiting-time recursion runs one level short of the particle count
    # horizon: the law of the total time at height K matches the passage
    # minimum at depth K-1
    K = params["K"]
    b = params["b"]
    if K < 1:
        raise ConfigError(f"height must be >= 1, got {K}")
    out = np.empty(size, dtype=np.float64)
    for i in range(size):
        out[i] = recursion_sample(K - 1, b, stream)
    return {"value": out}


def _sample_coupled(stream, size, params):
    salts = stream.raw64_array(size)
    times, ybars = _kernels.coupled_batch(params["K"], params["b"], salts)
    return {"time": times, "ybar": ybars}


_SAMPLERS = {
    "xi": _sample_xi,
    "xi-ct": _sample_xi_ct,
    "height-hit": _sample_height_hit,
    "grow": _sample_grow,
    "ct-compare": _sample_ct_compare,
    "ybar": _sample_ybar,
    "ybar-recursion": _sample_ybar_recursion,
    "xi-ct-recursion": _sample_xi_ct_recursion,
    "coupled": _sample_coupled,
}


def _run_chunk(args):
    kind, seed, tag, index, size, params = args
    stream = RandomStream.for_experiment(seed, tag, index)
    return _SAMPLERS[kind](stream, size, params)


def run_replicated(kind, n, params, seed, tag=None, jobs=1):
    """Sample n replicates of the named kind; returns column name -> array.

    The output is a pure function of (kind, n, params, seed, tag): jobs only
    changes how chunks are distributed, never what they contain.
    """
    if kind not in _SAMPLERS:
        raise ConfigError(f"unknown experiment kind {kind!r}")
    if jobs < 1:
        raise ConfigError(f"jobs must be >= 1, got {jobs}")
    if tag is None:
        tag = kind
    tasks = [
        (kind, seed, tag, index, size, params)
        for index, size in enumerate(chunk_sizes(n))
    ]
    if jobs == 1 or len(tasks) == 1:
        parts = [_run_chunk(task) for task in tasks]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_run_chunk, tasks))
    columns = {}
    for name in parts[0]:
        columns[name] = np.concatenate([part[name] for part in parts])
    return columns


def format_value(v):
    """Render a sample value for CSV: integers plain, floats round-trip."""
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return repr(float(v))


def write_sample_csv(path, values):
    """Write one sample vector as the two-column replicate,value layout."""
    with open(path, "w") as fh:
        fh.write("replicate,value\n")
        for i, v in enumerate(values):
            fh.write(f"{i},{format_value(v)}\n")


def sample_file_paths(out, names):
    """Map column names to output paths.

    A single-column result goes to `out` directly; multi-column results get
    the column name spliced in before the extension.
    """
    out = str(out)
    if len(names) == 1:
        return {names[0]: out}
    if out.endswith(".csv"):
        stem = out[: -len(".csv")]
    else:
        stem = out
    return {name: f"{stem}-{name}.csv" for name in names}


def read_sample_csv(path):
    """Read a replicate,value CSV back into a float array."""
    with open(path) as fh:
        header = fh.readline().strip()
        if header.split(",")[:2] != ["replicate", "value"]:
            raise ConfigError(f"{path}: not a replicate,value sample file")
        values = [float(line.split(",")[1]) for line in fh if line.strip()]
    return np.asarray(values, dtype=np.float64)


def write_json_report(path, doc, volatile):
    """Write a JSON report with all volatile fields isolated on line 2.

    Everything below that line is a pure function of config and seed, so
    two runs of the same experiment diff only in the one volatile line.
    """
    body = json.dumps(doc, indent=1, sort_keys=True)
    if not body.startswith("{\n"):
        raise ValueError("report document must be a JSON object")
    text = '{\n "volatile": ' + json.dumps(volatile, sort_keys=True) + ",\n" + body[2:]
    with open(path, "w") as fh:
        fh.write(text)
        fh.write("\n")
