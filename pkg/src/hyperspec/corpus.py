"""Deterministic small hypergraphs used by ``hyperspec check`` and the tests."""

from __future__ import annotations

import random
from itertools import combinations

from hyperspec.hypergraph import Hypergraph, complete_uniform, cycle, path, star


def loose_path(k: int, m: int) -> Hypergraph:
    """``m`` edges, consecutive edges share one vertex."""
    edges, start = [], 1
    for _ in range(m):
        edges.append(tuple(range(start, start + k)))
        start += k - 1
    return Hypergraph(k, start, tuple(edges))


def sunflower(k: int, m: int, kernel: int = 1) -> Hypergraph:
    """``m`` edges sharing the same ``kernel`` vertices and nothing else."""
    core = tuple(range(1, kernel + 1))
    edges, nxt = [], kernel + 1
    for _ in range(m):
        edges.append(core + tuple(range(nxt, nxt + k - kernel)))
        nxt += k - kernel
    return Hypergraph(k, nxt - 1, tuple(edges))


def random_hypergraph(k: int, n: int, m: int, seed: int) -> Hypergraph:
    rng = random.Random(seed)
    slots = list(combinations(range(1, n + 1), k))
    return Hypergraph(k, n, tuple(rng.sample(slots, min(m, len(slots)))))


def trace_corpus() -> dict[str, Hypergraph]:
    """k in {3, 4}, n <= 6; small enough for exact traces up to d = k."""
    c = {
        "edge3": Hypergraph(3, 3, ((1, 2, 3),)),
        "edge4": Hypergraph(4, 4, ((1, 2, 3, 4),)),
        "path3_2": loose_path(3, 2),
        "sunflower3_2_2": sunflower(3, 2, 2),
        "K3_4": complete_uniform(3, 4),
        "K3_5": complete_uniform(3, 5),
        "K4_5": complete_uniform(4, 5),
        "fano_like6": Hypergraph(3, 6, ((1, 2, 3), (1, 4, 5), (2, 4, 6), (3, 5, 6))),
        "pair4_share2": sunflower(4, 2, 2),
        "pair4_share3": sunflower(4, 2, 3),
        "isolated3": Hypergraph(3, 5, ((1, 2, 3),)),
        "disjoint3": Hypergraph(3, 6, ((1, 2, 3), (4, 5, 6))),
        "edgeless4": Hypergraph(4, 4, ()),
        "cycle4_6": Hypergraph(4, 6, ((1, 2, 3, 4), (3, 4, 5, 6), (5, 6, 1, 2))),
    }
    for i, (k, n, m) in enumerate([(3, 5, 3), (3, 6, 4), (3, 6, 6), (4, 5, 2),
                                   (4, 6, 3), (4, 6, 5), (3, 4, 2), (4, 6, 2)]):
        c[f"rand{k}_{n}_{m}_{i}"] = random_hypergraph(k, n, m, seed=100 + i)
    return c


def regular_corpus() -> dict[str, tuple[Hypergraph, int]]:
    """Regular instances with their degree."""
    return {
        "K3_4": (complete_uniform(3, 4), 3),
        "cycle4_6": (Hypergraph(4, 6, ((1, 2, 3, 4), (3, 4, 5, 6), (5, 6, 1, 2))), 2),
        "edge4": (Hypergraph(4, 4, ((1, 2, 3, 4),)), 1),
    }


def graph_corpus() -> dict[str, Hypergraph]:
    from hyperspec.hypergraph import graph
    return {
        "K2": path(2),
        "P3": path(3),
        "C3": cycle(3),
        "S4": star(4),
        "P4": path(4),
        "C4": cycle(4),
        "K4": graph(4, combinations(range(1, 5), 2)),
    }
