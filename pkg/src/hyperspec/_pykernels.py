"""Pure-Python implementations of the compiled kernels in ``_ckernels.pyx``.

Both modules expose identical signatures and results; ``kernels`` picks one
at import time.
"""

from __future__ import annotations

from itertools import combinations, permutations, product
from math import comb

import numpy as np


def _arcs_ok(tails, heads, mults) -> bool:
    """Balanced in/out degrees and a single connected arc support."""
    bal: dict[int, int] = {}
    parent: dict[int, int] = {}

    def find(a):
        parent.setdefault(a, a)
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for t, h, c in zip(tails, heads, mults):
        if c <= 0:
            continue
        bal[t] = bal.get(t, 0) + c
        bal[h] = bal.get(h, 0) - c
        parent[find(t)] = find(h)
    if any(bal.values()):
        return False
    return len({find(v) for v in bal}) <= 1


def count_closed_walks(tails, heads, mults) -> int:
    """Closed walks using each distinct arc ``(tails[a], heads[a])`` exactly
    ``mults[a]`` times, counted as arc sequences with a designated first arc.

    Parallel copies of an arc are indistinguishable.
    """
    tails = [int(t) for t in tails]
    heads = [int(h) for h in heads]
    counts = [int(c) for c in mults]
    total = sum(counts)
    if total == 0 or not _arcs_ok(tails, heads, counts):
        return 0
    out_arcs: dict[int, list[int]] = {}
    for a, t in enumerate(tails):
        if counts[a]:
            out_arcs.setdefault(t, []).append(a)
    memo: dict[tuple, int] = {}

    def rec(cur: int, target: int, remaining: int) -> int:
        if remaining == 0:
            return 1 if cur == target else 0
        key = (cur, target, tuple(counts))
        hit = memo.get(key)
        if hit is not None:
            return hit
        s = 0
        for a in out_arcs.get(cur, ()):
            if counts[a]:
                counts[a] -= 1
                s += rec(heads[a], target, remaining - 1)
                counts[a] += 1
        memo[key] = s
        return s

    walks = 0
    for a in range(len(tails)):
        if counts[a]:
            counts[a] -= 1
            walks += rec(heads[a], tails[a], total - 1)
            counts[a] += 1
    return walks


def edge_apply(edges: np.ndarray, x: np.ndarray, n: int) -> np.ndarray:
    """``out[i] = sum over edges e containing i of prod_{j in e, j != i} x[j]``.

    ``edges`` is an ``(m, k)`` array of 0-based vertex ids.
    """
    out = np.zeros(n, dtype=np.complex128)
    if edges.size == 0:
        return out
    vals = x[edges]
    ones = np.ones((vals.shape[0], 1), dtype=np.complex128)
    prefix = np.cumprod(np.hstack([ones, vals[:, :-1]]), axis=1)
    suffix = np.cumprod(np.hstack([ones, vals[:, :0:-1]]), axis=1)[:, ::-1]
    others = prefix * suffix
    np.add.at(out, edges.ravel(), others.ravel())
    return out


# -- isomorph-free uniform hypergraph classes --------------------------------
#
# Slots are the k-subsets of range(n) in colex order, so the slots of the
# first n-1 vertices form a prefix and a hypergraph is a bitmask over slots.
# The canonical mask is the least image over relabellings that sort vertices
# by the invariant (degree, sum of co-member degrees); ties are tried in
# every order.

def colex_slots(n: int, k: int) -> list[tuple[int, ...]]:
    return sorted(combinations(range(n), k), key=lambda t: t[::-1])


def _colex_rank(t) -> int:
    return sum(comb(c, i) for i, c in enumerate(sorted(t), start=1))


def canonical_mask(mask: int, n: int, k: int, slots=None) -> int:
    slots = slots if slots is not None else colex_slots(n, k)
    edges = [slots[b] for b in range(len(slots)) if mask >> b & 1]
    deg = [0] * n
    for e in edges:
        for v in e:
            deg[v] += 1
    inv = [0] * n
    for e in edges:
        s = sum(deg[u] for u in e)
        for v in e:
            inv[v] += s - deg[v]
    key = [(deg[v] << 32) | inv[v] for v in range(n)]
    cells: dict[int, list[int]] = {}
    for v in range(n):
        cells.setdefault(key[v], []).append(v)
    blocks = [cells[c] for c in sorted(cells)]
    best = None
    for choice in product(*(permutations(b) for b in blocks)):
        p = [0] * n
        pos = 0
        for block in choice:
            for v in block:
                p[v] = pos
                pos += 1
        img = 0
        for e in edges:
            img |= 1 << _colex_rank(p[v] for v in e)
        if best is None or img < best:
            best = img
    return best if best is not None else 0


def uniform_classes(k: int, n: int) -> np.ndarray:
    """Canonical slot masks, one per isomorphism class of k-uniform
    hypergraphs on ``n`` vertices (isolated vertices allowed), ascending."""
    if n > 16 or comb(n, k) > 64:
        raise ValueError("class enumeration needs n <= 16 and C(n, k) <= 64")
    if n < k:
        return np.zeros(1, dtype=np.uint64)
    level = [0, 1]
    for m in range(k + 1, n + 1):
        slots = colex_slots(m, k)
        base, width = comb(m - 1, k), comb(m - 1, k - 1)
        found = set()
        for R in level:
            for link in range(1 << width):
                found.add(canonical_mask(R | (link << base), m, k, slots))
        level = sorted(found)
    return np.array(level, dtype=np.uint64)


PROBE_CONNECTED, PROBE_NONEMPTY, PROBE_ODD_BIP, PROBE_HALF_SUM, PROBE_VIOLATION = 1, 2, 4, 8, 16


def _gf2_consistent(rows, n):
    """Rows are (vertex bitmask, rhs); returns a solution bitmask or None."""
    pivots: dict[int, tuple[int, int]] = {}
    for bits, rhs in rows:
        for p, (pb, pr) in pivots.items():
            if bits >> p & 1:
                bits ^= pb
                rhs ^= pr
        if bits == 0:
            if rhs:
                return None
            continue
        p = (bits & -bits).bit_length() - 1
        for q, (qb, qr) in list(pivots.items()):
            if qb >> p & 1:
                pivots[q] = (qb ^ bits, qr ^ rhs)
        pivots[p] = (bits, rhs)
    return sum(1 << p for p, (_, r) in pivots.items() if r)


def _half_sum_masks(vmasks, n, k):
    out = set()
    for f in product(range(k), repeat=n - 1):
        f = f + (0,)
        m = 0
        for s, vm in enumerate(vmasks):
            if sum(f[v] for v in range(n) if vm >> v & 1) % k == k // 2:
                m |= 1 << s
        out.add(m)
    return sorted(out)


def probe_classes(masks, kp: int, n: int, complement: bool, k: int) -> np.ndarray:
    """Status flags per class: connected, nonempty, odd-bipartite, half-sum,
    and a violation flag when an odd bipartition fails to yield the half-sum
    labelling ``k/2 * indicator(V_1)``. Edges are complements of the
    ``kp``-slots when ``complement`` is set."""
    full = (1 << n) - 1
    vmasks = []
    for t in colex_slots(n, kp):
        vm = sum(1 << v for v in t)
        vmasks.append(full ^ vm if complement else vm)
    hs = _half_sum_masks(vmasks, n, k) if k % 2 == 0 else []
    out = np.zeros(len(masks), dtype=np.uint8)
    for idx, mask in enumerate(map(int, masks)):
        es = [vmasks[s] for s in range(len(vmasks)) if mask >> s & 1]
        flags = 0
        if es:
            flags |= PROBE_NONEMPTY
        seen = es[0] if es else (1 if n == 1 else 0)
        grow = True
        while grow:
            grow = False
            for vm in es:
                if vm & seen and vm & ~seen:
                    seen |= vm
                    grow = True
        if seen == full:
            flags |= PROBE_CONNECTED
        if k % 2 == 0 and es:
            x = _gf2_consistent([(vm, 1) for vm in es], n)
            if x is not None:
                flags |= PROBE_ODD_BIP
                if all((k // 2) * bin(vm & x).count("1") % k == k // 2 for vm in es):
                    flags |= PROBE_HALF_SUM
                else:
                    flags |= PROBE_VIOLATION
            if not flags & PROBE_HALF_SUM and any(mask & ~E == 0 for E in hs):
                flags |= PROBE_HALF_SUM
        out[idx] = flags
    return out
