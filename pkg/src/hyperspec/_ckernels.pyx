# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: closed-walk counting, edge-list tensor application, and
isomorph-free enumeration of small uniform hypergraphs."""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport uint64_t
from libcpp.unordered_map cimport unordered_map
from libcpp.unordered_set cimport unordered_set
from libcpp.vector cimport vector

from hyperspec import _pykernels

cnp.import_array()

ctypedef unordered_map[uint64_t, long long] Memo


cdef long long _rec(int cur, int target, int remaining, uint64_t code,
                    vector[int]& counts, vector[uint64_t]& stride,
                    vector[int]& heads, vector[vector[int]]& out_arcs,
                    int nv, Memo& memo) except -1:
    cdef uint64_t key
    cdef long long s = 0
    cdef int a, i
    if remaining == 0:
        return 1 if cur == target else 0
    key = (code * nv + <uint64_t>cur) * nv + <uint64_t>target
    it = memo.find(key)
    if it != memo.end():
        return memo[key]
    for i in range(<int>out_arcs[cur].size()):
        a = out_arcs[cur][i]
        if counts[a] > 0:
            counts[a] -= 1
            s += _rec(heads[a], target, remaining - 1, code - stride[a],
                      counts, stride, heads, out_arcs, nv, memo)
            counts[a] += 1
    memo[key] = s
    return s


def count_closed_walks(tails, heads, mults):
    """Same contract as :func:`hyperspec._pykernels.count_closed_walks`."""
    tails = [int(t) for t in tails]
    heads = [int(h) for h in heads]
    mults = [int(c) for c in mults]
    cdef int total = sum(mults)
    if total == 0 or not _pykernels._arcs_ok(tails, heads, mults):
        return 0
    verts = sorted(set(tails) | set(heads))
    ids = {v: i for i, v in enumerate(verts)}
    cdef int nv = len(verts)
    # mixed-radix state code; fall back when it cannot fit in 64 bits
    span = 1
    for c in mults:
        span *= c + 1
    if span * nv * nv >= (1 << 63):
        return _pykernels.count_closed_walks(tails, heads, mults)
    cdef vector[int] counts
    cdef vector[uint64_t] stride
    cdef vector[int] hv
    cdef vector[vector[int]] out_arcs
    cdef Memo memo
    cdef uint64_t code = 0, s = 1
    cdef int a
    out_arcs.resize(nv)
    for a in range(len(mults)):
        counts.push_back(mults[a])
        stride.push_back(s)
        code += s * <uint64_t>mults[a]
        s *= <uint64_t>(mults[a] + 1)
        hv.push_back(ids[heads[a]])
        if mults[a] > 0:
            out_arcs[ids[tails[a]]].push_back(a)
    cdef long long walks = 0
    for a in range(len(mults)):
        if counts[a] > 0:
            counts[a] -= 1
            walks += _rec(hv[a], ids[tails[a]], total - 1, code - stride[a],
                          counts, stride, hv, out_arcs, nv, memo)
            counts[a] += 1
    return int(walks)


def edge_apply(cnp.int64_t[:, ::1] edges, double complex[::1] x, int n):
    """Same contract as :func:`hyperspec._pykernels.edge_apply`."""
    cdef Py_ssize_t m = edges.shape[0], k = edges.shape[1] if edges.shape[0] else 0
    out_arr = np.zeros(n, dtype=np.complex128)
    cdef double complex[::1] out = out_arr
    cdef double complex[64] pre
    cdef double complex acc
    cdef Py_ssize_t e, p
    if k > 64:
        return _pykernels.edge_apply(np.asarray(edges), np.asarray(x), n)
    for e in range(m):
        acc = 1
        for p in range(k):
            pre[p] = acc
            acc = acc * x[edges[e, p]]
        acc = 1
        for p in range(k - 1, -1, -1):
            out[edges[e, p]] += pre[p] * acc
            acc = acc * x[edges[e, p]]
    return out_arr


# -- isomorph-free uniform hypergraph classes (mirrors _pykernels) -----------

cdef extern from "<algorithm>" namespace "std" nogil:
    bint next_permutation[It](It first, It last)
    void sort[It](It first, It last)
    It unique[It](It first, It last)


cdef struct SlotTable:
    int n
    int k
    int nslots
    vector[uint64_t] vmask     # vertex bitmask per slot
    vector[int] rank_of        # colex rank indexed by vertex bitmask


cdef void _build_table(SlotTable* T, int n, int k):
    slots = _pykernels.colex_slots(n, k)
    T.n = n
    T.k = k
    T.nslots = len(slots)
    T.vmask.clear()
    T.rank_of.assign(1 << n, -1)
    for r, t in enumerate(slots):
        vm = 0
        for v in t:
            vm |= 1 << v
        T.vmask.push_back(<uint64_t>vm)
        T.rank_of[vm] = r


cdef extern from *:
    int __builtin_ctzll(unsigned long long) nogil


cdef uint64_t _canon(uint64_t mask, SlotTable* T) nogil:
    cdef int n = T.n
    cdef int deg[32]
    cdef long long inv[32]
    cdef long long key[32]
    cdef int order[32]
    cdef uint64_t bit[32]      # new label bit of each old vertex
    cdef int cell_start[33]
    cdef int edges[64]
    cdef int ne = 0
    cdef int ncells = 0
    cdef int s, v, i, j, c, tmp
    cdef uint64_t vm, nvm, img, best = 0, rest
    cdef long long tot
    cdef bint first = True, more
    for v in range(n):
        deg[v] = 0
        inv[v] = 0
    rest = mask
    while rest:
        s = __builtin_ctzll(rest)
        rest &= rest - 1
        edges[ne] = s
        ne += 1
        vm = T.vmask[s]
        while vm:
            deg[__builtin_ctzll(vm)] += 1
            vm &= vm - 1
    for i in range(ne):
        vm = T.vmask[edges[i]]
        tot = 0
        while vm:
            tot += deg[__builtin_ctzll(vm)]
            vm &= vm - 1
        vm = T.vmask[edges[i]]
        while vm:
            v = __builtin_ctzll(vm)
            inv[v] += tot - deg[v]
            vm &= vm - 1
    for v in range(n):
        key[v] = (<long long>deg[v] << 32) | inv[v]
        order[v] = v
    # insertion sort by (key, vertex id): cells are runs of equal key
    for i in range(1, n):
        tmp = order[i]
        j = i - 1
        while j >= 0 and (key[order[j]] > key[tmp] or
                          (key[order[j]] == key[tmp] and order[j] > tmp)):
            order[j + 1] = order[j]
            j -= 1
        order[j + 1] = tmp
    for i in range(n):
        if i == 0 or key[order[i]] != key[order[i - 1]]:
            cell_start[ncells] = i
            ncells += 1
    cell_start[ncells] = n
    while True:
        for i in range(n):
            bit[order[i]] = (<uint64_t>1) << i
        img = 0
        for i in range(ne):
            vm = T.vmask[edges[i]]
            nvm = 0
            while vm:
                nvm |= bit[__builtin_ctzll(vm)]
                vm &= vm - 1
            img |= (<uint64_t>1) << T.rank_of[nvm]
        if first or img < best:
            best = img
            first = False
        more = False
        c = ncells - 1
        while c >= 0:
            if next_permutation(&order[cell_start[c]], &order[cell_start[c + 1]]):
                more = True
                break
            c -= 1
        if not more:
            break
    return best


def canonical_mask(mask, int n, int k, slots=None):
    """Same contract as :func:`hyperspec._pykernels.canonical_mask`."""
    cdef SlotTable T
    _build_table(&T, n, k)
    return int(_canon(<uint64_t>mask, &T))


def uniform_classes(int k, int n):
    """Same contract as :func:`hyperspec._pykernels.uniform_classes`."""
    from math import comb
    if n > 16 or comb(n, k) > 64:
        raise ValueError("class enumeration needs n <= 16 and C(n, k) <= 64")
    if n < k:
        return np.zeros(1, dtype=np.uint64)
    cdef vector[uint64_t] level
    cdef vector[uint64_t] nxt
    cdef unordered_set[uint64_t] found
    cdef SlotTable T
    cdef int m, base, width
    cdef uint64_t R, link, nlinks
    cdef size_t r
    level.push_back(0)
    level.push_back(1)
    for m in range(k + 1, n + 1):
        _build_table(&T, m, k)
        base = comb(m - 1, k)
        width = comb(m - 1, k - 1)
        nlinks = (<uint64_t>1) << width
        found.clear()
        found.reserve(min(level.size() * nlinks // 4 + 16, <uint64_t>(1 << 24)))
        with nogil:
            for r in range(level.size()):
                R = level[r]
                link = 0
                while link < nlinks:
                    found.insert(_canon(R | (link << base), &T))
                    link += 1
        nxt.assign(found.begin(), found.end())
        sort(nxt.begin(), nxt.end())
        level.swap(nxt)
    out = np.empty(level.size(), dtype=np.uint64)
    cdef cnp.uint64_t[::1] view = out
    for r in range(level.size()):
        view[r] = level[r]
    return out


cdef int _popcount(uint64_t x) nogil:
    cdef int c = 0
    while x:
        x &= x - 1
        c += 1
    return c


cdef bint _gf2_solve(uint64_t* rows, int nrows, int n, uint64_t* sol) nogil:
    # rows: vertex bits, rhs stored at bit n; Gauss-Jordan in place
    cdef uint64_t piv_row[64]
    cdef int piv_col[64]
    cdef int npiv = 0, i, j, p
    cdef uint64_t r
    cdef uint64_t low = ((<uint64_t>1) << n) - 1
    for i in range(nrows):
        r = rows[i]
        for j in range(npiv):
            if r >> piv_col[j] & 1:
                r ^= piv_row[j]
        if r & low == 0:
            if r >> n & 1:
                return False
            continue
        p = 0
        while not (r >> p & 1):
            p += 1
        for j in range(npiv):
            if piv_row[j] >> p & 1:
                piv_row[j] ^= r
        piv_row[npiv] = r
        piv_col[npiv] = p
        npiv += 1
    sol[0] = 0
    for j in range(npiv):
        if piv_row[j] >> n & 1:
            sol[0] |= (<uint64_t>1) << piv_col[j]
    return True


def probe_classes(cnp.uint64_t[::1] masks, int kp, int n, bint complement, int k):
    """Same contract as :func:`hyperspec._pykernels.probe_classes`."""
    cdef SlotTable T
    _build_table(&T, n, kp)
    cdef int ns = T.nslots, s, v, half = k // 2
    cdef uint64_t full = ((<uint64_t>1) << n) - 1
    cdef vector[uint64_t] vm
    for s in range(ns):
        vm.push_back(full ^ T.vmask[s] if complement else T.vmask[s])
    cdef vector[uint64_t] hs
    cdef long long nf, fi, q
    cdef int f[32]
    cdef int tot
    cdef uint64_t E
    if k % 2 == 0:
        nf = 1
        for v in range(n - 1):
            nf *= k
        if nf > (1 << 24):
            raise ValueError("half-sum table too large")
        with nogil:
            for fi in range(nf):
                q = fi
                for v in range(n - 1):
                    f[v] = q % k
                    q //= k
                f[n - 1] = 0
                E = 0
                for s in range(ns):
                    tot = 0
                    for v in range(n):
                        if vm[s] >> v & 1:
                            tot += f[v]
                    if tot % k == half:
                        E |= (<uint64_t>1) << s
                hs.push_back(E)
            sort(hs.begin(), hs.end())
            hs.erase(unique(hs.begin(), hs.end()), hs.end())
    cdef Py_ssize_t N = masks.shape[0], idx
    out = np.zeros(N, dtype=np.uint8)
    cdef cnp.uint8_t[::1] flags = out
    cdef uint64_t mask, seen, x
    cdef uint64_t rows[64]
    cdef int nrows, flag
    cdef bint grow, ok
    cdef size_t h
    with nogil:
        for idx in range(N):
            mask = masks[idx]
            flag = 0
            nrows = 0
            for s in range(ns):
                if mask >> s & 1:
                    rows[nrows] = vm[s] | ((<uint64_t>1) << n)
                    nrows += 1
            if nrows:
                flag |= 2
                seen = rows[0] & full
            else:
                seen = 1 if n == 1 else 0
            grow = True
            while grow:
                grow = False
                for s in range(nrows):
                    if rows[s] & seen and (rows[s] & full) & ~seen:
                        seen |= rows[s] & full
                        grow = True
            if seen == full:
                flag |= 1
            if k % 2 == 0 and nrows:
                if _gf2_solve(rows, nrows, n, &x):
                    flag |= 4
                    ok = True
                    for s in range(nrows):
                        if (half * _popcount(rows[s] & x & full)) % k != half:
                            ok = False
                    flag |= 8 if ok else 16
                if not flag & 8:
                    for h in range(hs.size()):
                        if mask & ~hs[h] == 0:
                            flag |= 8
                            break
            flags[idx] = flag
    return out
