# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
# distutils: language = c++
"""Compiled batch kernels.

Each function mirrors its pure twin draw for draw: digits come from the
same buffered low-bits-first pool, scalar waiting times go through the
same inversion (libm log on both sides), and event queues pop in the same
(time, index) order.  The digit pool is loaded from the stream object on
entry and written back on exit so Python and compiled draws can
interleave freely on one stream.
"""

from cpython.pycapsule cimport PyCapsule_GetPointer
from libc.math cimport log as clog, pow as cpow
from libc.stdint cimport int32_t, int64_t, uint64_t
from libcpp.pair cimport pair
from libcpp.queue cimport priority_queue
from libcpp.unordered_set cimport unordered_set
from libcpp.vector cimport vector
from numpy.random cimport bitgen_t

import numpy as np

cimport numpy as cnp

cnp.import_array()

from ..errors import CapacityError, ConfigError, DepthCapExceeded
from ..nodes import max_depth_for_indexing

cdef double TWO_NEG53 = 2.0 ** -53
cdef uint64_t MAX_STATE_ENTRIES = (<uint64_t>1) << 25

# events sort as (-time, -index): the C++ max-heap then pops the earliest
# time, ties to the smallest index, matching the pure heapq ordering
ctypedef pair[double, int64_t] Event


cdef struct RngState:
    bitgen_t* bg
    uint64_t pool
    int pool_bits
    int b
    int m
    uint64_t mask


cdef RngState _load(object stream, int b):
    cdef RngState st
    capsule = stream.bit_generator.capsule
    st.bg = <bitgen_t*> PyCapsule_GetPointer(capsule, "BitGenerator")
    st.pool = stream._pool
    st.pool_bits = stream._pool_bits
    st.b = b
    st.m = 0
    while (b - 1) >> st.m:
        st.m += 1
    st.mask = ((<uint64_t>1) << st.m) - 1
    return st


cdef void _store(RngState* st, object stream):
    stream._pool = st.pool
    stream._pool_bits = st.pool_bits


cdef inline uint64_t _raw(RngState* st) noexcept nogil:
    return st.bg.next_uint64(st.bg.state)


cdef inline int _digit(RngState* st) noexcept nogil:
    cdef uint64_t v
    while True:
        if st.pool_bits < st.m:
            st.pool = _raw(st)
            st.pool_bits = 64
        v = st.pool & st.mask
        st.pool >>= st.m
        st.pool_bits -= st.m
        if v < <uint64_t>st.b:
            return <int>v


cdef inline double _expo(RngState* st, double rate) noexcept nogil:
    cdef uint64_t x = _raw(st)
    return -clog(<double>((x >> 11) + 1) * TWO_NEG53) / rate


cdef inline uint64_t _level_start(int b, int k) noexcept nogil:
    cdef uint64_t p = 1
    cdef int i
    for i in range(k):
        p *= <uint64_t>b
    return (p + b - 2) // (b - 1)


cdef inline int _depth_of(uint64_t v, uint64_t* starts) noexcept nogil:
    cdef int d = 0
    while starts[d + 1] <= v:
        d += 1
    return d


cdef void _check_args(int K, int b, int k_min):
    if K < k_min:
        raise ConfigError(f"height/depth argument must be >= {k_min}, got {K}")
    if b < 2 or b > 64:
        raise ConfigError(f"branching factor must be in [2, 64], got {b}")


def xi_batch(int K, int b, Py_ssize_t n, object stream):
    """Aggregation particle counts; twin of bam.run_discrete in a loop."""
    _check_args(K, b, 1)
    cdef uint64_t nstamp = _level_start(b, K)
    if nstamp > MAX_STATE_ENTRIES:
        raise CapacityError(f"height {K} at b={b} needs {nstamp} boundary entries")
    out = np.empty(n, dtype=np.uint64)
    cdef uint64_t[::1] ov = out
    stamps = np.zeros(nstamp, dtype=np.int32)
    cdef int32_t[::1] sv = stamps
    cdef RngState st = _load(stream, b)
    cdef int32_t epoch = 0
    cdef uint64_t v, count
    cdef int depth
    cdef Py_ssize_t i
    for i in range(n):
        epoch += 1
        count = 0
        while True:
            count += 1
            v = 1
            depth = 0
            while sv[v] != epoch and depth != K - 1:
                v = v * b - (b - 2) + _digit(&st)
                depth += 1
            if v == 1:
                break
            sv[(v + b - 2) // b] = epoch
        ov[i] = count
    _store(&st, stream)
    return out


def height_hit_batch(int K, int b, Py_ssize_t n, object stream):
    """Insertions until height K; twin of dst.height_hitting_time in a loop."""
    _check_args(K, b, 1)
    cdef uint64_t nstamp = _level_start(b, K)
    if nstamp > MAX_STATE_ENTRIES:
        raise CapacityError(f"height {K} at b={b} needs {nstamp} tree entries")
    out = np.empty(n, dtype=np.uint64)
    cdef uint64_t[::1] ov = out
    stamps = np.zeros(nstamp, dtype=np.int32)
    cdef int32_t[::1] sv = stamps
    cdef RngState st = _load(stream, b)
    cdef int32_t epoch = 0
    cdef uint64_t v, nins
    cdef int depth, h
    cdef Py_ssize_t i
    for i in range(n):
        epoch += 1
        h = 0
        nins = 0
        while h < K:
            v = 1
            depth = 0
            while sv[v] == epoch:
                v = v * b - (b - 2) + _digit(&st)
                depth += 1
            sv[v] = epoch
            nins += 1
            if depth + 1 > h:
                h = depth + 1
        ov[i] = nins
    _store(&st, stream)
    return out


def grow_height_batch(int b, object sizes_obj, object stream):
    """Heights after a fixed number of insertions each; twin of DstProcess."""
    _check_args(1, b, 1)
    sizes = np.ascontiguousarray(sizes_obj, dtype=np.uint64)
    cdef uint64_t[::1] sz = sizes
    cdef Py_ssize_t n = sizes.shape[0]
    out = np.empty(n, dtype=np.uint64)
    cdef uint64_t[::1] ov = out
    cdef RngState st = _load(stream, b)
    cdef int depth_cap = max_depth_for_indexing(b)
    cdef unordered_set[uint64_t] occupied
    cdef uint64_t v, j
    cdef int depth, h
    cdef Py_ssize_t i
    for i in range(n):
        occupied.clear()
        h = 0
        for j in range(sz[i]):
            v = 1
            depth = 0
            while occupied.count(v):
                if depth >= depth_cap:
                    _store(&st, stream)
                    raise CapacityError("growth descended past the index depth cap")
                v = v * b - (b - 2) + _digit(&st)
                depth += 1
            occupied.insert(v)
            if depth + 1 > h:
                h = depth + 1
        ov[i] = h
    _store(&st, stream)
    return out


def clock_until_height_batch(int K, int b, Py_ssize_t n, object stream):
    """First ring times reaching height K; twin of clock_run_until_height."""
    _check_args(K, b, 1)
    out = np.empty(n, dtype=np.float64)
    cdef double[::1] ov = out
    cdef RngState st = _load(stream, b)
    cdef uint64_t starts[66]
    cdef int d
    for d in range(66):
        starts[d] = _level_start(b, d) if d < 64 else <uint64_t>(-1)
    cdef priority_queue[Event] heap
    cdef Event ev
    cdef double t, rate
    cdef uint64_t v
    cdef int h, j
    cdef Py_ssize_t i
    for i in range(n):
        heap = priority_queue[Event]()
        heap.push(Event(-_expo(&st, 1.0), -1))
        h = 0
        while True:
            ev = heap.top()
            heap.pop()
            t = -ev.first
            v = <uint64_t>(-ev.second)
            d = _depth_of(v, starts)
            if d >= 62:
                _store(&st, stream)
                raise CapacityError("clock growth descended past the index depth cap")
            rate = cpow(b, <double>(-(d + 1)))
            for j in range(b):
                heap.push(Event(-(t + _expo(&st, rate)),
                                -<int64_t>(v * b - (b - 2) + j)))
            if d + 1 > h:
                h = d + 1
                if h >= K:
                    ov[i] = t
                    break
    _store(&st, stream)
    return out


def clock_height_at_batch(double t_end, int b, Py_ssize_t n, object stream):
    """Heights of the clock construction at a fixed time; twin of ClockProcess."""
    _check_args(1, b, 1)
    out = np.empty(n, dtype=np.uint64)
    cdef uint64_t[::1] ov = out
    cdef RngState st = _load(stream, b)
    cdef uint64_t starts[66]
    cdef int d
    for d in range(66):
        starts[d] = _level_start(b, d) if d < 64 else <uint64_t>(-1)
    cdef priority_queue[Event] heap
    cdef Event ev
    cdef double t, rate
    cdef uint64_t v
    cdef int h, j
    cdef Py_ssize_t i
    for i in range(n):
        heap = priority_queue[Event]()
        heap.push(Event(-_expo(&st, 1.0), -1))
        h = 0
        while -heap.top().first <= t_end:
            ev = heap.top()
            heap.pop()
            t = -ev.first
            v = <uint64_t>(-ev.second)
            d = _depth_of(v, starts)
            if d >= 62:
                _store(&st, stream)
                raise CapacityError("clock growth descended past the index depth cap")
            rate = cpow(b, <double>(-(d + 1)))
            for j in range(b):
                heap.push(Event(-(t + _expo(&st, rate)),
                                -<int64_t>(v * b - (b - 2) + j)))
            if d + 1 > h:
                h = d + 1
        ov[i] = h
    _store(&st, stream)
    return out


def fpp_height_at_batch(double t, int b, Py_ssize_t n, object stream,
                        int depth_cap=62):
    """Percolation heights at a fixed time; twin of ctdst.fpp_height_at."""
    _check_args(1, b, 1)
    if t < 0:
        raise ConfigError(f"observation time must be >= 0, got {t}")
    out = np.empty(n, dtype=np.uint64)
    cdef uint64_t[::1] ov = out
    cdef RngState st = _load(stream, b)
    cdef vector[pair[int, double]] stack
    cdef pair[int, double] top
    cdef double y, yc, rate
    cdef double child_buf[64]
    cdef int d, j, maxd, nkept
    cdef Py_ssize_t i
    for i in range(n):
        y = _expo(&st, 1.0)
        if y > t:
            ov[i] = 0
            continue
        maxd = 0
        stack.clear()
        stack.push_back(pair[int, double](0, y))
        while stack.size() > 0:
            top = stack.back()
            stack.pop_back()
            d = top.first
            y = top.second
            if d > maxd:
                maxd = d
            if d >= depth_cap:
                _store(&st, stream)
                raise DepthCapExceeded(f"occupied set reached depth {depth_cap}")
            rate = cpow(b, <double>(-(d + 1)))
            nkept = 0
            for j in range(b):
                yc = y + _expo(&st, rate)
                if yc <= t:
                    child_buf[nkept] = yc
                    nkept += 1
            for j in range(nkept - 1, -1, -1):
                stack.push_back(pair[int, double](d + 1, child_buf[j]))
        ov[i] = maxd + 1
    _store(&st, stream)
    return out


def coupled_batch(int K, int b, object salts_obj):
    """Coupled aggregation/percolation pairs; twin of bam.run_coupled.

    Weight fields are built by the library's vectorized keyed generator so
    both backends see identical doubles; the event queue and the
    leaves-first fold then run in C.
    """
    from ..ctdst import EdgeWeightField

    _check_args(K, b, 0)
    salts = np.ascontiguousarray(salts_obj, dtype=np.uint64)
    cdef uint64_t[::1] sl = salts
    cdef Py_ssize_t n = salts.shape[0]
    if K > 24:
        raise CapacityError(f"coupled runs cap at depth 24, asked for {K}")
    times = np.empty(n, dtype=np.float64)
    ybars = np.empty(n, dtype=np.float64)
    cdef double[::1] tv = times
    cdef double[::1] yv = ybars
    cdef uint64_t starts[26]
    cdef int d
    for d in range(K + 2):
        starts[d] = _level_start(b, d)
    cdef uint64_t base = starts[K]
    cdef uint64_t nleaf = 1
    for d in range(K):
        nleaf *= <uint64_t>b
    promoted = np.zeros(starts[K], dtype=np.int32)
    cdef int32_t[::1] pv = promoted
    work = np.empty(nleaf, dtype=np.float64)
    cdef double[::1] wv = work
    cdef double* lvl[25]
    cdef int32_t epoch = 0
    cdef priority_queue[Event] heap
    cdef Event ev
    cdef double t, m, w
    cdef uint64_t v, p, j, width
    cdef int dd
    cdef Py_ssize_t i
    for i in range(n):
        field = EdgeWeightField(b, K, int(sl[i]), eager=True)
        held = field._levels
        for d in range(K + 1):
            arr = <cnp.ndarray> held[d]
            lvl[d] = <double*> cnp.PyArray_DATA(arr)
        epoch += 1
        heap = priority_queue[Event]()
        for j in range(nleaf):
            heap.push(Event(-lvl[K][j], -<int64_t>(base + j)))
        while True:
            ev = heap.top()
            heap.pop()
            t = -ev.first
            v = <uint64_t>(-ev.second)
            if v == 1:
                tv[i] = t
                break
            p = (v + b - 2) // b
            if pv[p] == epoch:
                continue
            pv[p] = epoch
            dd = _depth_of(v, starts) - 1
            heap.push(Event(-(t + lvl[dd][p - starts[dd]]), -<int64_t>p))
        # leaves-first fold over the same arrays, smallest child wins exactly
        for j in range(nleaf):
            wv[j] = lvl[K][j]
        width = nleaf
        for dd in range(K - 1, -1, -1):
            width //= b
            for j in range(width):
                m = wv[j * b]
                for v in range(1, <uint64_t>b):
                    w = wv[j * b + v]
                    if w < m:
                        m = w
                wv[j] = lvl[dd][j] + m
        yv[i] = wv[0]
    return times, ybars
