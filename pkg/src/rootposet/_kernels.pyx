# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled bitmask kernels; see ``_pykernels`` for the reference semantics."""

from libc.stdint cimport uint64_t
from libc.stdlib cimport malloc, realloc, free, qsort
from libc.string cimport memcpy, memset
from functools import reduce
from math import comb
from operator import or_

IMPLEMENTATION = "cython"

cdef extern from *:
    int popcount64 "__builtin_popcountll"(unsigned long long) nogil
    int ctz64 "__builtin_ctzll"(unsigned long long) nogil


cdef int _cmp_u64(const void *a, const void *b) noexcept nogil:
    cdef uint64_t x = (<uint64_t *>a)[0]
    cdef uint64_t y = (<uint64_t *>b)[0]
    return (x > y) - (x < y)


cdef struct Buf:
    uint64_t *data
    Py_ssize_t size
    Py_ssize_t capacity


cdef int _push(Buf *buf, uint64_t v) except -1:
    cdef uint64_t *grown
    if buf.size == buf.capacity:
        buf.capacity = buf.capacity * 2 if buf.capacity else 256
        grown = <uint64_t *>realloc(buf.data, buf.capacity * sizeof(uint64_t))
        if grown == NULL:
            raise MemoryError()
        buf.data = grown
    buf.data[buf.size] = v
    buf.size += 1
    return 0


cdef int _load(masks, uint64_t *out) except -1:
    cdef Py_ssize_t i
    for i in range(len(masks)):
        out[i] = <uint64_t>masks[i]
    return 0


cdef inline uint64_t _full(int n) nogil:
    if n == 64:
        return <uint64_t>0xFFFFFFFFFFFFFFFF
    return ((<uint64_t>1) << n) - 1


cdef inline uint64_t _ideal(const uint64_t *below, uint64_t a) nogil:
    cdef uint64_t acc = a
    while a:
        acc |= below[ctz64(a)]
        a &= a - 1
    return acc


cdef inline uint64_t _pan(const uint64_t *below, int n, uint64_t a) nogil:
    cdef uint64_t comp = _full(n) & ~_ideal(below, a)
    cdef uint64_t rest = comp
    cdef uint64_t out = 0
    cdef int i
    while rest:
        i = ctz64(rest)
        rest &= rest - 1
        if not (below[i] & comp):
            out |= (<uint64_t>1) << i
    return out


cdef Py_ssize_t _enumerate(const uint64_t *below, const uint64_t *above, int n,
                           long long cap, Buf *buf) except -2:
    """Fill ``buf`` with every antichain; -1 if more than ``cap`` exist."""
    cdef uint64_t comp[64]
    cdef uint64_t stack_a[65]
    cdef uint64_t stack_avail[65]
    cdef int top = 0
    cdef int i
    cdef uint64_t a, avail, low, b
    for i in range(n):
        comp[i] = below[i] | above[i] | ((<uint64_t>1) << i)
    _push(buf, 0)
    stack_a[0] = 0
    stack_avail[0] = _full(n)
    top = 1
    while top:
        top -= 1
        a = stack_a[top]
        avail = stack_avail[top]
        while avail:
            i = ctz64(avail)
            low = (<uint64_t>1) << i
            avail ^= low
            b = a | low
            _push(buf, b)
            if 0 <= cap < buf.size:
                return -1
            if avail & ~comp[i]:
                # depth-first: the child must be expanded before remaining siblings
                stack_a[top] = a
                stack_avail[top] = avail
                top += 1
                a = b
                avail = avail & ~comp[i]
    qsort(buf.data, buf.size, sizeof(uint64_t), _cmp_u64)
    return buf.size


def antichains(below, above, long long cap=-1):
    cdef int n = len(below)
    cdef uint64_t b[64]
    cdef uint64_t u[64]
    cdef Buf buf
    cdef Py_ssize_t i, got
    buf.data = NULL
    buf.size = 0
    buf.capacity = 0
    _load(below, b)
    _load(above, u)
    try:
        got = _enumerate(b, u, n, cap, &buf)
        if got < 0:
            return None
        return [buf.data[i] for i in range(buf.size)]
    finally:
        free(buf.data)


def ideal(below, a):
    cdef uint64_t b[64]
    _load(below, b)
    return _ideal(b, <uint64_t>a)


def census(below, above, uint64_t simples, long long cap=-1):
    cdef int n = len(below)
    cdef int k_max = popcount64(simples)
    cdef uint64_t b[64]
    cdef uint64_t u[64]
    cdef Buf buf
    cdef Py_ssize_t i, got
    cdef uint64_t a
    cdef long long *tri
    cdef long long hist[65]
    buf.data = NULL
    buf.size = 0
    buf.capacity = 0
    _load(below, b)
    _load(above, u)
    tri = <long long *>malloc((k_max + 1) * (n + 1) * sizeof(long long))
    if tri == NULL:
        raise MemoryError()
    try:
        got = _enumerate(b, u, n, cap, &buf)
        if got < 0:
            return None
        for i in range((k_max + 1) * (n + 1)):
            tri[i] = 0
        for i in range(n + 1):
            hist[i] = 0
        for i in range(buf.size):
            a = buf.data[i]
            tri[popcount64(a & simples) * (n + 1) + popcount64(a)] += 1
            hist[popcount64(_ideal(b, a))] += 1
        acs = [buf.data[i] for i in range(buf.size)]
        htri = [[tri[k * (n + 1) + m] for m in range(n + 1)] for k in range(k_max + 1)]
        return acs, htri, [hist[i] for i in range(n + 1)]
    finally:
        free(buf.data)
        free(tri)


def panyushev(below, a):
    cdef uint64_t b[64]
    _load(below, b)
    return _pan(b, len(below), <uint64_t>a)


cdef Py_ssize_t _find(const uint64_t *data, Py_ssize_t size, uint64_t key) nogil:
    cdef Py_ssize_t lo = 0, hi = size - 1, mid
    while lo <= hi:
        mid = (lo + hi) >> 1
        if data[mid] < key:
            lo = mid + 1
        elif data[mid] > key:
            hi = mid - 1
        else:
            return mid
    return -1


def orbits(below, acs, uint64_t uncertified=0):
    cdef int n = len(below)
    cdef uint64_t b[64]
    cdef Py_ssize_t size = len(acs)
    cdef uint64_t *data = <uint64_t *>malloc(max(size, 1) * sizeof(uint64_t))
    cdef unsigned char *seen = <unsigned char *>malloc(max(size, 1))
    cdef Py_ssize_t j, pos
    cdef uint64_t start, a
    cdef long length, total
    cdef bint certified
    if data == NULL or seen == NULL:
        free(data)
        free(seen)
        raise MemoryError()
    _load(below, b)
    try:
        for j in range(size):
            data[j] = <uint64_t>acs[j]
            seen[j] = 0
        out = []
        for j in range(size):
            if seen[j]:
                continue
            start = data[j]
            a = start
            length = 0
            total = 0
            certified = True
            while True:
                pos = _find(data, size, a)
                if pos < 0:
                    raise ValueError("antichain list is not closed under the Panyushev map")
                seen[pos] = 1
                length += 1
                total += popcount64(a)
                if a & uncertified:
                    certified = False
                a = _pan(b, n, a)
                if a == start:
                    break
            out.append((length, total, certified))
        return out
    finally:
        free(data)
        free(seen)


PRUNE_REASONS = (
    "antichain count",
    "h-triangle",
    "ideal sizes",
    "orbit average",
    "orbit length",
    "restricted orbit average",
)

cdef enum:
    R_COUNT = 0
    R_TRI = 1
    R_IDEAL = 2
    R_AVG = 3
    R_LEN = 4
    R_AVG_B = 5


cdef class _V2:
    cdef int nr, total, n, stop_depth, ntargets, orb_len, nchoices
    cdef int sizes[64]
    cdef int starts[65]
    cdef int cfg_base[64]
    cdef int cfg_count[64]
    cdef uint64_t *pats
    cdef long long cap
    cdef bint use4, use6, use5m, use5a, use5b
    cdef long long *tri_t
    cdef long long *ideal_t
    cdef long long *orb_t
    cdef long long *orb_seen
    cdef long long a_num, a_den, b_num, b_den
    cdef uint64_t covers[64]
    cdef uint64_t below[64]
    cdef uint64_t above[64]
    cdef Buf buf
    cdef Buf buf2
    cdef long long *tri
    cdef long long hist[65]
    cdef unsigned char *seen
    cdef Py_ssize_t seen_cap
    cdef long long nodes, leaves
    cdef long long pruned[6]
    cdef int choices[64]
    cdef list out
    # antichains, their ideals, h-triangle and ideal histogram of the node
    # on the current path at each depth, for incremental child censuses
    cdef Buf lvl_acs[65]
    cdef Buf lvl_ideals[65]
    cdef long long *lvl_tri
    cdef long long lvl_hist[65][65]
    # same-rank antichains of the ranks still to come, by size
    cdef long long future[65][65]
    # elements per later rank that may miss a given simple, summed
    cdef long long spare[65]
    cdef bint built

    def __cinit__(self):
        self.pats = NULL
        self.tri_t = NULL
        self.ideal_t = NULL
        self.orb_t = NULL
        self.orb_seen = NULL
        self.tri = NULL
        self.seen = NULL
        self.seen_cap = 0
        self.buf.data = NULL
        self.buf.size = 0
        self.buf.capacity = 0
        self.buf2.data = NULL
        self.buf2.size = 0
        self.buf2.capacity = 0
        self.lvl_tri = NULL
        cdef int d
        for d in range(65):
            self.lvl_acs[d].data = NULL
            self.lvl_acs[d].size = 0
            self.lvl_acs[d].capacity = 0
            self.lvl_ideals[d].data = NULL
            self.lvl_ideals[d].size = 0
            self.lvl_ideals[d].capacity = 0

    def __dealloc__(self):
        cdef int d
        for d in range(65):
            free(self.lvl_acs[d].data)
            free(self.lvl_ideals[d].data)
        free(self.lvl_tri)
        free(self.pats)
        free(self.tri_t)
        free(self.ideal_t)
        free(self.orb_t)
        free(self.orb_seen)
        free(self.tri)
        free(self.seen)
        free(self.buf.data)
        free(self.buf2.data)

    cdef void _apply(self, int depth, int idx) noexcept:
        cdef int lo = self.starts[depth - 1]
        cdef int st = self.starts[depth]
        cdef int up = self.sizes[depth]
        cdef int base = self.cfg_base[depth - 1] + idx * up
        cdef int u, x
        cdef uint64_t c, bb, rest, new
        for u in range(up):
            c = self.pats[base + u] << lo
            bb = c
            rest = c
            while rest:
                bb |= self.below[ctz64(rest)]
                rest &= rest - 1
            self.covers[st + u] = c
            self.below[st + u] = bb
            self.above[st + u] = 0
            new = (<uint64_t>1) << (st + u)
            rest = bb
            while rest:
                self.above[ctz64(rest)] |= new
                rest &= rest - 1

    cdef int _ensure_seen(self, Py_ssize_t size) except -1:
        cdef unsigned char *grown
        if size > self.seen_cap:
            grown = <unsigned char *>realloc(self.seen, size)
            if grown == NULL:
                raise MemoryError()
            self.seen = grown
            self.seen_cap = size
        memset(self.seen, 0, size)
        return 0

    cdef int _orbit_scan(self, const uint64_t *bl, int size, Buf *acs, uint64_t top,
                         bint check_avg, long long num, long long den, bint check_len) except -2:
        """-1 if fine, else the prune reason."""
        cdef Py_ssize_t j, pos
        cdef uint64_t start, a
        cdef long long length, tot
        cdef bint certified
        self._ensure_seen(acs.size)
        if check_len:
            memset(self.orb_seen, 0, self.orb_len * sizeof(long long))
        for j in range(acs.size):
            if self.seen[j]:
                continue
            start = acs.data[j]
            a = start
            length = 0
            tot = 0
            certified = True
            while True:
                pos = _find(acs.data, acs.size, a)
                if pos < 0:
                    raise ValueError("antichain list is not closed under the Panyushev map")
                self.seen[pos] = 1
                length += 1
                tot += popcount64(a)
                if a & top:
                    certified = False
                a = _pan(bl, size, a)
                if a == start:
                    break
            if not certified:
                continue
            if check_avg and tot * den != length * num:
                return R_AVG
            if check_len:
                if length >= self.orb_len:
                    return R_LEN
                self.orb_seen[length] += 1
                if self.orb_seen[length] > self.orb_t[length]:
                    return R_LEN
        return -1

    cdef int _census_full(self, int depth) except -2:
        cdef int size = self.starts[depth]
        cdef int stride = self.total + 1
        cdef uint64_t simples = _full(self.n)
        cdef Py_ssize_t i
        cdef uint64_t a
        self.buf.size = 0
        if _enumerate(self.below, self.above, size, self.cap, &self.buf) < 0:
            return R_COUNT
        self.built = True
        memset(self.tri, 0, (self.n + 1) * stride * sizeof(long long))
        memset(self.hist, 0, 65 * sizeof(long long))
        for i in range(self.buf.size):
            a = self.buf.data[i]
            self.tri[popcount64(a & simples) * stride + popcount64(a)] += 1
            if self.use6:
                self.hist[popcount64(_ideal(self.below, a))] += 1
        return -1

    cdef int _census_inc(self, int depth) except -2:
        """Census from the parent's: new antichains are a | S, S a nonempty set of new elements."""
        cdef int lo = self.starts[depth - 1]
        cdef int up = self.sizes[depth - 1]
        cdef int stride = self.total + 1
        cdef uint64_t simples = _full(self.n)
        cdef Buf *pa = &self.lvl_acs[depth - 1]
        cdef Buf *pi = &self.lvl_ideals[depth - 1]
        cdef long long count = pa.size
        cdef int sub, u, ssize
        cdef uint64_t S, bS, iS, a
        cdef Py_ssize_t i
        self.built = False
        memcpy(self.tri, self.lvl_tri + (depth - 1) * (self.n + 1) * stride,
               (self.n + 1) * stride * sizeof(long long))
        if self.use6:
            memcpy(self.hist, self.lvl_hist[depth - 1], 65 * sizeof(long long))
        for sub in range(1, 1 << up):
            S = (<uint64_t>sub) << lo
            bS = 0
            for u in range(up):
                if sub >> u & 1:
                    bS |= self.below[lo + u]
            iS = bS | S
            ssize = popcount64(S)
            for i in range(pa.size):
                a = pa.data[i]
                if a & bS:
                    continue
                count += 1
                if 0 <= self.cap < count:
                    return R_COUNT
                self.tri[popcount64(a & simples) * stride + popcount64(a) + ssize] += 1
                if self.use6:
                    self.hist[popcount64(pi.data[i] | iS)] += 1
        return -1

    cdef int _build(self, int depth) except -1:
        """Fill ``buf`` with the sorted antichains after an incremental census."""
        cdef int lo = self.starts[depth - 1]
        cdef int up = self.sizes[depth - 1]
        cdef Buf *pa = &self.lvl_acs[depth - 1]
        cdef int sub, u
        cdef uint64_t S, bS
        cdef Py_ssize_t i, mark
        if self.built:
            return 0
        self.buf.size = 0
        for i in range(pa.size):
            _push(&self.buf, pa.data[i])
        mark = self.buf.size
        for sub in range(1, 1 << up):
            S = (<uint64_t>sub) << lo
            bS = 0
            for u in range(up):
                if sub >> u & 1:
                    bS |= self.below[lo + u]
            for i in range(pa.size):
                if not pa.data[i] & bS:
                    _push(&self.buf, pa.data[i] | S)
        # older antichains are all smaller than the new ones
        qsort(self.buf.data + mark, self.buf.size - mark, sizeof(uint64_t), _cmp_u64)
        self.built = True
        return 0

    cdef int _save(self, int depth) except -1:
        """Record the current node's census as the parent data for its children."""
        cdef int stride = self.total + 1
        cdef Buf *la = &self.lvl_acs[depth]
        cdef Buf *li = &self.lvl_ideals[depth]
        cdef Py_ssize_t i
        self._build(depth)
        la.size = 0
        li.size = 0
        for i in range(self.buf.size):
            _push(la, self.buf.data[i])
            _push(li, _ideal(self.below, self.buf.data[i]))
        memcpy(self.lvl_tri + depth * (self.n + 1) * stride, self.tri,
               (self.n + 1) * stride * sizeof(long long))
        memcpy(self.lvl_hist[depth], self.hist, 65 * sizeof(long long))
        return 0

    cdef int _check(self, int depth, bint inc) except -2:
        cdef int size = self.starts[depth]
        cdef int n = self.n
        cdef int stride = self.total + 1
        cdef uint64_t simples = _full(n)
        cdef Py_ssize_t i
        cdef int k, m, s, t, x, p, r
        cdef uint64_t a, top, reach, touch
        cdef long long c, w, ways
        cdef int loose
        cdef bint fixed, ok
        cdef uint64_t b2[64]
        cdef uint64_t u2[64]
        r = self._census_inc(depth) if inc else self._census_full(depth)
        if r >= 0:
            return r
        if self.use4:
            reach = simples
            touch = 0
            for x in range(self.starts[depth - 1], size):
                reach &= self.below[x]
                touch |= self.below[x]
            loose = popcount64(simples & ~reach)
            fixed = loose == 0
            for k in range(n + 1):
                for m in range(size + 1):
                    c = self.tri[k * stride + m]
                    w = self.tri_t[k * stride + m]
                    if k == 0:
                        c += self.future[depth][m]
                    if c > w or (fixed and k and c != w):
                        return R_TRI
                if touch & simples == simples and k and k < size:
                    ways = 1
                    for i in range(k):
                        ways = ways * (loose - i) // (i + 1)
                    if self.tri[k * stride + k + 1] + ways * self.spare[depth] < self.tri_t[k * stride + k + 1]:
                        return R_TRI
        if self.use6:
            # every later element covers one on the top rank, so ideals no
            # larger than the smallest principal ideal there are final
            p = self.total
            if depth < self.nr:
                for x in range(self.starts[depth - 1], size):
                    if popcount64(self.below[x]) + 1 < p:
                        p = popcount64(self.below[x]) + 1
            ok = False
            for t in range(self.ntargets):
                ok = True
                for s in range(size + 1):
                    w = self.ideal_t[t * stride + s]
                    if self.hist[s] > w or (s <= p and self.hist[s] != w):
                        ok = False
                        break
                if ok:
                    break
            if not ok:
                return R_IDEAL
        if depth == self.nr:
            top = 0
        else:
            top = _full(size) ^ _full(self.starts[depth - 1])
        if self.use5m or self.use5a:
            self._build(depth)
            r = self._orbit_scan(self.below, size, &self.buf, top, self.use5a,
                                 self.a_num, self.a_den, self.use5m)
            if r >= 0:
                return r
        if self.use5b and depth > 1:
            for x in range(size - n):
                b2[x] = self.below[x + n] >> n
                u2[x] = self.above[x + n] >> n
            self.buf2.size = 0
            _enumerate(b2, u2, size - n, -1, &self.buf2)
            if self._orbit_scan(b2, size - n, &self.buf2, top >> n, True,
                                self.b_num, self.b_den, False) >= 0:
                return R_AVG_B
        return -1

    cdef int _walk(self, int depth, bint check_node, bint inc) except -1:
        cdef int r, idx, i
        cdef uint64_t saved[64]
        if check_node:
            self.nodes += 1
            r = self._check(depth, inc)
            if r >= 0:
                self.pruned[r] += 1
                return 0
        if self.stop_depth >= 0 and (self.nchoices == self.stop_depth or depth == self.nr):
            self.out.append(tuple([self.choices[i] for i in range(self.nchoices)]))
            return 0
        if depth == self.nr:
            self.leaves += 1
            self.out.append([self.covers[i] for i in range(self.total)])
            return 0
        if check_node:
            self._save(depth)
        else:
            self._census_full(depth)
            self._save(depth)
        memcpy(saved, self.above, 64 * sizeof(uint64_t))
        for idx in range(self.cfg_count[depth - 1]):
            self._apply(depth, idx)
            self.choices[self.nchoices] = idx
            self.nchoices += 1
            self._walk(depth + 1, True, True)
            self.nchoices -= 1
            memcpy(self.above, saved, 64 * sizeof(uint64_t))
        return 0


def v2_dfs(sizes, patterns, seed_covers, seed_below, prefix=(), check_root=True,
           int stop_depth=-1, long long cap=-1, tri_target=None, ideal_targets=None,
           orbit_allowed=None, avg_a=None, avg_b=None):
    cdef _V2 s = _V2()
    cdef int r, c, u, k, m, i, y, depth
    cdef bint held
    cdef Py_ssize_t npats = 0
    cdef uint64_t rest
    s.nr = len(sizes)
    s.starts[0] = 0
    for r in range(s.nr):
        s.sizes[r] = sizes[r]
        s.starts[r + 1] = s.starts[r] + s.sizes[r]
    s.total = s.starts[s.nr]
    if s.total > 64:
        raise ValueError("posets are limited to 64 elements")
    s.n = s.sizes[0]
    for r in range(s.nr - 1):
        s.cfg_base[r] = npats
        s.cfg_count[r] = len(patterns[r])
        npats += len(patterns[r]) * s.sizes[r + 1]
    s.pats = <uint64_t *>malloc(max(npats, 1) * sizeof(uint64_t))
    s.tri = <long long *>malloc((s.n + 1) * (s.total + 1) * sizeof(long long))
    s.lvl_tri = <long long *>malloc((s.nr + 1) * (s.n + 1) * (s.total + 1) * sizeof(long long))
    if s.pats == NULL or s.tri == NULL or s.lvl_tri == NULL:
        raise MemoryError()
    for r in range(s.nr - 1):
        for c in range(s.cfg_count[r]):
            for u in range(s.sizes[r + 1]):
                s.pats[s.cfg_base[r] + c * s.sizes[r + 1] + u] = patterns[r][c][u]
    memset(s.covers, 0, sizeof(s.covers))
    memset(s.below, 0, sizeof(s.below))
    memset(s.above, 0, sizeof(s.above))
    for y in range(len(seed_covers)):
        s.covers[y] = seed_covers[y]
        s.below[y] = seed_below[y]
        rest = s.below[y]
        while rest:
            s.above[ctz64(rest)] |= (<uint64_t>1) << y
            rest &= rest - 1
    depth = -1
    for r in range(s.nr + 1):
        if s.starts[r] == len(seed_covers):
            depth = r
    if depth < 1:
        raise ValueError("seed does not end at a rank boundary")
    s.cap = cap
    s.stop_depth = stop_depth
    memset(s.future, 0, sizeof(s.future))
    for i in range(s.nr + 1):
        for r in range(i, s.nr):
            for m in range(1, s.sizes[r] + 1):
                s.future[i][m] += comb(s.sizes[r], m)
        s.spare[i] = 0
        held = i > 0
        for r in range(i, s.nr):
            held = held and all(reduce(or_, pat, 0) == (1 << s.sizes[r - 1]) - 1 for pat in patterns[r - 1])
            s.spare[i] += s.sizes[r] - held
    s.use4 = tri_target is not None
    if s.use4:
        s.tri_t = <long long *>malloc((s.n + 1) * (s.total + 1) * sizeof(long long))
        for k in range(s.n + 1):
            for m in range(s.total + 1):
                s.tri_t[k * (s.total + 1) + m] = tri_target[k][m]
    s.use6 = ideal_targets is not None
    if s.use6:
        s.ntargets = len(ideal_targets)
        s.ideal_t = <long long *>malloc(max(s.ntargets, 1) * (s.total + 1) * sizeof(long long))
        for i in range(s.ntargets):
            for m in range(s.total + 1):
                s.ideal_t[i * (s.total + 1) + m] = ideal_targets[i][m]
    s.use5m = orbit_allowed is not None
    if s.use5m:
        s.orb_len = len(orbit_allowed)
        s.orb_t = <long long *>malloc(max(s.orb_len, 1) * sizeof(long long))
        s.orb_seen = <long long *>malloc(max(s.orb_len, 1) * sizeof(long long))
        for i in range(s.orb_len):
            s.orb_t[i] = orbit_allowed[i]
    s.use5a = avg_a is not None
    if s.use5a:
        s.a_num, s.a_den = avg_a
    s.use5b = avg_b is not None
    if s.use5b:
        s.b_num, s.b_den = avg_b
    s.out = []
    s.nodes = 0
    s.leaves = 0
    for i in range(6):
        s.pruned[i] = 0
    s.nchoices = 0
    for c in prefix:
        s._apply(depth, c)
        s.choices[s.nchoices] = c
        s.nchoices += 1
        depth += 1
    s._walk(depth, check_root, False)
    stats = {"nodes": s.nodes, "leaves": s.leaves}
    for i in range(6):
        stats[PRUNE_REASONS[i]] = s.pruned[i]
    return s.out, stats
