"""Isomorph-free generation of small uniform hypergraphs and the label-class
search behind the ``conjecture`` command."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations, combinations_with_replacement, permutations, product
from typing import Iterator

import numpy as np

from hyperspec import kernels
from hyperspec.hypergraph import (
    Hypergraph, components, find_odd_bipartition, induced_on, is_connected,
)

Edges = tuple[tuple[int, ...], ...]


def _refine(n: int, edges: Edges) -> list[int]:
    """Stable vertex colouring by iterated edge-neighbourhood refinement.

    Colours are ranks of isomorphism-invariant signatures, so relabelled
    copies of a hypergraph get matching colour classes.
    """
    inc: dict[int, list[tuple[int, ...]]] = {v: [] for v in range(1, n + 1)}
    for e in edges:
        for v in e:
            inc[v].append(e)
    colour = {v: 0 for v in inc}
    classes = 1
    while True:
        sig = {v: (colour[v], tuple(sorted(tuple(sorted(colour[u] for u in e if u != v))
                                           for e in inc[v])))
               for v in inc}
        ranks = {s: i for i, s in enumerate(sorted(set(sig.values())))}
        colour = {v: ranks[sig[v]] for v in inc}
        if len(ranks) == classes:
            return [colour[v] for v in range(1, n + 1)]
        classes = len(ranks)


def canonical_form(n: int, edges: Edges) -> Edges:
    """Lexicographically least relabelled edge list among colour-respecting
    relabellings; equal for isomorphic inputs."""
    colour = _refine(n, edges)
    groups: dict[int, list[int]] = {}
    for v, c in enumerate(colour, start=1):
        groups.setdefault(c, []).append(v)
    blocks = [groups[c] for c in sorted(groups)]
    best = None
    for choice in product(*(permutations(b) for b in blocks)):
        relabel = {}
        pos = 1
        for block in choice:
            for v in block:
                relabel[v] = pos
                pos += 1
        img = tuple(sorted(tuple(sorted(relabel[v] for v in e)) for e in edges))
        if best is None or img < best:
            best = img
    return best if best is not None else ()


def iter_hypergraphs(k: int, n: int, max_edges: int | None = None,
                     connected: bool = True) -> Iterator[Hypergraph]:
    """One representative per isomorphism class of k-uniform hypergraphs on
    ``n`` vertices, grown edge by edge with canonical-form deduplication.

    Every class with ``m`` edges is an extension of some class with ``m - 1``
    edges, so the levels are exhaustive up to ``max_edges``.
    """
    slots = list(combinations(range(1, n + 1), k))
    top = len(slots) if max_edges is None else min(max_edges, len(slots))
    level: set[Edges] = {()}
    for m in range(top + 1):
        for edges in sorted(level):
            H = Hypergraph(k, n, edges)
            if not connected or is_connected(H):
                yield H
        if m == top:
            break
        nxt: set[Edges] = set()
        for edges in level:
            present = set(edges)
            for s in slots:
                if s not in present:
                    nxt.add(canonical_form(n, tuple(sorted(present | {s}))))
        level = nxt


def trees(n: int) -> list[Hypergraph]:
    """All trees on ``n`` vertices up to isomorphism."""
    if n == 1:
        return [Hypergraph(2, 1, ())]
    return [G for G in iter_hypergraphs(2, n, max_edges=n - 1) if G.m == n - 1]


def orbit_count_bruteforce(k: int, n: int) -> int:
    """Isomorphism classes of k-uniform hypergraphs on ``n`` labelled vertices
    by orbit collection under the full symmetric group. Oracle for tests."""
    slots = list(combinations(range(1, n + 1), k))
    index = {s: i for i, s in enumerate(slots)}
    images = []
    for p in permutations(range(1, n + 1)):
        images.append([index[tuple(sorted(p[v - 1] for v in s))] for s in slots])
    seen = bytearray(1 << len(slots))
    orbits = 0
    for mask in range(1 << len(slots)):
        if seen[mask]:
            continue
        orbits += 1
        bits = [i for i in range(len(slots)) if mask >> i & 1]
        for img in images:
            seen[sum(1 << img[i] for i in bits)] = 1
    return orbits


# -- label-class search -------------------------------------------------------

@dataclass
class LabelCertificate:
    """Outcome of the exhaustive search for a connected hypergraph with a
    half-sum labelling but no odd bipartition."""
    k: int
    nmax: int
    classes_checked: int = 0
    specimens: list[tuple[Hypergraph, tuple[int, ...]]] = field(default_factory=list)

    @property
    def found(self) -> bool:
        return bool(self.specimens)


def half_sum_closure(k: int, labels: tuple[int, ...]) -> Hypergraph:
    """All k-subsets whose label sum is ``k/2`` modulo ``k``."""
    n = len(labels)
    edges = tuple(e for e in combinations(range(1, n + 1), k)
                  if sum(labels[v - 1] for v in e) % k == k // 2)
    return Hypergraph(k, n, edges)


def label_class_search(k: int, nmax: int, keep: int = 3) -> LabelCertificate:
    """Decide whether some connected k-uniform H on at most ``nmax`` vertices
    has a half-sum labelling ``f`` but no odd bipartition.

    Such an H sits inside the closure ``E_f`` of its own labelling, and any
    odd bipartition of the closure restricts to H. So it is enough to test
    every component of ``E_f`` over all label multisets ``f``; the multiset
    decides ``E_f`` up to isomorphism. Up to ``keep`` specimens are kept.
    """
    cert = LabelCertificate(k, nmax)
    if k % 2:
        return cert
    for n in range(k, nmax + 1):
        for labels in combinations_with_replacement(range(k), n):
            cert.classes_checked += 1
            E = half_sum_closure(k, labels)
            for comp in components(E):
                if len(comp) < k:
                    continue
                sub, relabel = induced_on(E, comp)
                if find_odd_bipartition(sub) is None and len(cert.specimens) < keep:
                    f = [0] * sub.n
                    for old, new in relabel.items():
                        f[new - 1] = labels[old - 1]
                    cert.specimens.append((sub, tuple(f)))
    return cert


def label_class_count(k: int, nmax: int) -> int:
    return sum(math.comb(n + k - 1, k - 1) for n in range(k, nmax + 1)) if k % 2 == 0 else 0


def minimise_specimen(H: Hypergraph, f: tuple[int, ...]) -> tuple[Hypergraph, tuple[int, ...]]:
    """Greedily drop edges (then isolated vertices) while H stays connected
    and without an odd bipartition; ``f`` stays a half-sum labelling."""
    edges = list(H.edges)
    changed = True
    while changed:
        changed = False
        for e in list(edges):
            trial = [x for x in edges if x != e]
            verts = sorted({v for x in trial for v in x})
            if not trial:
                continue
            sub, relabel = induced_on(Hypergraph(H.k, H.n, tuple(trial)), verts)
            if is_connected(sub) and find_odd_bipartition(sub) is None:
                edges = trial
                changed = True
                break
    verts = sorted({v for x in edges for v in x})
    sub, relabel = induced_on(Hypergraph(H.k, H.n, tuple(edges)), verts)
    g = [0] * sub.n
    for old, new in relabel.items():
        g[new - 1] = f[old - 1]
    return sub, tuple(g)


# -- full class census through the compiled kernels ---------------------------

FLAG_CONNECTED, FLAG_NONEMPTY, FLAG_ODD_BIP, FLAG_HALF_SUM, FLAG_VIOLATION = 1, 2, 4, 8, 16
# rough class-count ceiling (2^slots / n!) for a full census per backend
CENSUS_LIMIT = {"cython": 2e7, "python": 3e3}


def _side(k: int, n: int) -> tuple[int, bool]:
    """Enumerate the smaller of k and n-k; complementing edges within V is a
    bijection on isomorphism classes."""
    return (n - k, True) if n - k < k else (k, False)


def census_feasible(k: int, n: int, backend: str | None = None) -> bool:
    kp, _ = _side(k, n)
    slots = math.comb(n, kp)
    if n > 16 or slots > 64:
        return False
    return 2.0 ** slots / math.factorial(n) <= CENSUS_LIMIT[backend or kernels.BACKEND]


def class_masks(k: int, n: int) -> tuple[np.ndarray, int, bool]:
    """``(masks, kp, complement)``: one canonical slot mask per class of
    k-uniform hypergraphs on ``n`` vertices."""
    kp, comp = _side(k, n)
    if kp == 0:
        return np.array([0, 1], dtype=np.uint64), 0, comp
    return kernels.uniform_classes(kp, n), kp, comp


def mask_to_hypergraph(mask: int, k: int, n: int, kp: int, complement: bool) -> Hypergraph:
    slots = kernels.colex_slots(n, kp)
    full = set(range(n))
    edges = []
    for s, t in enumerate(slots):
        if int(mask) >> s & 1:
            e = sorted(full - set(t)) if complement else sorted(t)
            edges.append(tuple(v + 1 for v in e))
    return Hypergraph(k, n, tuple(edges))


@dataclass
class Census:
    k: int
    n: int
    classes: int
    connected: int = 0
    both: int = 0             # (1) and (4)
    half_sum_only: int = 0    # (4) without (1): specimens
    odd_bip_only: int = 0     # (1) without (4): would contradict the theorem
    neither: int = 0
    violations: int = 0
    specimen_masks: list[int] = field(default_factory=list)
    half_sum_masks: list[int] = field(default_factory=list)
    kp: int = 0
    complement: bool = False

    def hypergraph(self, mask: int) -> Hypergraph:
        return mask_to_hypergraph(mask, self.k, self.n, self.kp, self.complement)


def census(k: int, n: int, keep: int = 3, collect: int = 0) -> Census:
    """Condition counts over every connected class with at least one edge.

    ``keep`` specimen masks and ``collect`` masks satisfying (4) are kept for
    later witness construction.
    """
    masks, kp, comp = class_masks(k, n)
    flags = kernels.probe_classes(masks, kp, n, comp, k)
    out = Census(k, n, len(masks), kp=kp, complement=comp)
    live = (flags & FLAG_CONNECTED) & ((flags & FLAG_NONEMPTY) >> 1)
    sel = live.astype(bool)
    f = flags[sel]
    m = masks[sel]
    c1 = (f & FLAG_ODD_BIP).astype(bool)
    c4 = (f & FLAG_HALF_SUM).astype(bool)
    out.connected = int(sel.sum())
    out.both = int((c1 & c4).sum())
    out.half_sum_only = int((~c1 & c4).sum())
    out.odd_bip_only = int((c1 & ~c4).sum())
    out.neither = int((~c1 & ~c4).sum())
    out.violations = int((f & FLAG_VIOLATION).astype(bool).sum())
    out.specimen_masks = [int(x) for x in m[~c1 & c4][:keep]]
    out.half_sum_masks = [int(x) for x in m[c4][:collect]]
    return out
