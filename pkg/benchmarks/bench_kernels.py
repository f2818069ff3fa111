"""Compiled vs pure-Python kernel timings.

    python benchmarks/bench_kernels.py [--repeat 5] [--json]
"""

import argparse
import json
import sys
import timeit

import numpy as np

from hyperspec import _pykernels
from hyperspec.hypergraph import cycle, power_hypergraph

try:
    from hyperspec import _ckernels
except ImportError:
    _ckernels = None


def _walk_case():
    # complete digraph on 4 vertices, doubled arcs between opposite parities
    tails, heads, mults = [], [], []
    for a in range(1, 5):
        for b in range(1, 5):
            if a != b:
                tails.append(a)
                heads.append(b)
                mults.append(2 if (a + b) % 2 else 1)
    return tails, heads, mults


def _edge_case():
    H = power_hypergraph(cycle(400), 6)
    edges = np.array(H.edges, dtype=np.int64) - 1
    x = np.random.default_rng(0).random(H.n) + 0j
    return edges, x, H.n


def cases():
    walk = _walk_case()
    edges, x, n = _edge_case()
    masks = _pykernels.uniform_classes(2, 6)
    return {
        "count_closed_walks (20 arcs)": lambda m: m.count_closed_walks(*walk),
        "edge_apply (m=400, k=6)": lambda m: m.edge_apply(edges, x, n),
        "uniform_classes (k=2, n=6)": lambda m: m.uniform_classes(2, 6),
        "probe_classes (k=4, n=6)": lambda m: m.probe_classes(masks, 2, 6, True, 4),
    }


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args(argv)
    if _ckernels is None:
        print("compiled extension not built; run `pip install -e . --no-build-isolation`",
              file=sys.stderr)
        return 1
    rows = []
    for name, fn in cases().items():
        # same answer from both backends before timing anything
        assert np.allclose(np.asarray(fn(_pykernels)), np.asarray(fn(_ckernels))), name
        t = {}
        for label, mod in (("python", _pykernels), ("cython", _ckernels)):
            timer = timeit.Timer(lambda: fn(mod))
            loops, _ = timer.autorange()
            t[label] = min(timer.repeat(args.repeat, loops)) / loops
        rows.append({"kernel": name, "python_s": t["python"], "cython_s": t["cython"],
                     "speedup": t["python"] / t["cython"]})
    if args.json:
        print(json.dumps(rows, indent=2))
    else:
        print(f"{'kernel':30} {'python':>12} {'cython':>12} {'speedup':>9}")
        for r in rows:
            print(f"{r['kernel']:30} {r['python_s']:12.3e} {r['cython_s']:12.3e} {r['speedup']:8.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
