from collections import Counter
from fractions import Fraction
from itertools import permutations
from math import factorial, prod
import random

import numpy as np
import pytest
from hypothesis import given, strategies as st

from hyperspec import _pykernels
from hyperspec.generation import orbit_count_bruteforce

try:
    from hyperspec import _ckernels
except ImportError:  # extension not built
    _ckernels = None

BACKENDS = [pytest.param(_pykernels, id="python"),
            pytest.param(_ckernels, id="cython",
                         marks=pytest.mark.skipif(_ckernels is None, reason="extension not built"))]


def _walks_brute(arcs: Counter) -> int:
    seq = [a for a, c in arcs.items() for _ in range(c)]
    seen = set()
    for p in permutations(seq):
        if p in seen:
            continue
        seen.add(p)
    return sum(1 for p in seen
               if all(p[i][1] == p[(i + 1) % len(p)][0] for i in range(len(p))))


def _walks_best(arcs: Counter) -> int:
    """BEST theorem: m * t_w * prod (outdeg - 1)! / prod mult!."""
    verts = sorted({v for a in arcs for v in a})
    out = Counter()
    inn = Counter()
    for (t, h), c in arcs.items():
        out[t] += c
        inn[h] += c
    if out != inn:
        return 0
    idx = {v: i for i, v in enumerate(verts)}
    L = [[Fraction(0)] * len(verts) for _ in verts]
    for (t, h), c in arcs.items():
        if t != h:
            L[idx[t]][idx[t]] += c
            L[idx[t]][idx[h]] -= c
    M = [row[1:] for row in L[1:]]
    t_w = round(np.linalg.det(np.array(M, dtype=float))) if M else 1
    m = sum(arcs.values())
    return m * t_w * prod(factorial(out[v] - 1) for v in verts) // prod(factorial(c) for c in arcs.values())


@st.composite
def arc_multisets(draw):
    n = draw(st.integers(1, 3))
    arcs = Counter()
    for _ in range(draw(st.integers(1, 4))):
        arcs[(draw(st.integers(1, n)), draw(st.integers(1, n)))] += draw(st.integers(1, 2))
    return arcs


def _call(backend, arcs):
    items = sorted(arcs.items())
    return backend.count_closed_walks([a[0] for a, _ in items], [a[1] for a, _ in items],
                                      [c for _, c in items])


@pytest.mark.parametrize("backend", BACKENDS)
@given(arcs=arc_multisets())
def test_walks_brute_force(backend, arcs):
    if sum(arcs.values()) > 7:
        return
    assert _call(backend, arcs) == _walks_brute(arcs)


@pytest.mark.parametrize("backend", BACKENDS)
@given(arcs=arc_multisets())
def test_walks_best_theorem(backend, arcs):
    got = _call(backend, arcs)
    # BEST needs a connected support; disconnected supports give zero walks
    if got:
        assert got == _walks_best(arcs)


@pytest.mark.parametrize("backend", BACKENDS)
def test_walks_known(backend):
    # a directed triangle traversed twice: the three rotations of one word
    arcs = Counter({(1, 2): 2, (2, 3): 2, (3, 1): 2})
    assert _call(backend, arcs) == 3 == _walks_best(arcs)
    assert _call(backend, Counter({(1, 1): 3})) == 1
    assert _call(backend, Counter({(1, 2): 1})) == 0


@pytest.mark.parametrize("backend", BACKENDS)
def test_edge_apply_naive(backend):
    rng = np.random.default_rng(3)
    n, k = 6, 4
    edges = np.array([rng.choice(n, k, replace=False) for _ in range(7)], dtype=np.int64)
    x = rng.normal(size=n) + 1j * rng.normal(size=n)
    want = np.zeros(n, dtype=complex)
    for e in edges:
        for i in e:
            want[i] += prod(x[j] for j in e if j != i)
    assert np.allclose(backend.edge_apply(edges, x, n), want)


@pytest.mark.parametrize("backend", BACKENDS)
@pytest.mark.parametrize("k, n, count", [
    (2, 2, 2), (2, 3, 4), (2, 4, 11), (2, 5, 34), (2, 6, 156),  # OEIS A000088
    (3, 4, 5), (3, 5, 34),                                      # OEIS A000665
])
def test_class_counts(backend, k, n, count):
    assert len(backend.uniform_classes(k, n)) == count


@pytest.mark.parametrize("k, n", [(2, 4), (3, 5), (2, 5)])
def test_class_counts_orbit_oracle(k, n):
    assert len(_pykernels.uniform_classes(k, n)) == orbit_count_bruteforce(k, n)


@pytest.mark.skipif(_ckernels is None, reason="extension not built")
def test_class_counts_larger():
    assert len(_ckernels.uniform_classes(3, 6)) == 2136
    assert len(_ckernels.uniform_classes(2, 7)) == 1044


@pytest.mark.parametrize("backend", BACKENDS)
def test_canonical_mask_invariant(backend):
    rng = random.Random(7)
    n, k = 6, 3
    slots = _pykernels.colex_slots(n, k)
    index = {s: i for i, s in enumerate(slots)}
    for _ in range(30):
        mask = rng.getrandbits(len(slots))
        perm = list(range(n))
        rng.shuffle(perm)
        img = 0
        for i, s in enumerate(slots):
            if mask >> i & 1:
                img |= 1 << index[tuple(sorted(perm[v] for v in s))]
        assert backend.canonical_mask(mask, n, k) == backend.canonical_mask(img, n, k)


@pytest.mark.skipif(_ckernels is None, reason="extension not built")
@pytest.mark.parametrize("k, n", [(2, 5), (2, 6), (3, 5), (3, 6)])
def test_backends_agree_on_classes(k, n):
    assert np.array_equal(np.sort(_ckernels.uniform_classes(k, n)),
                          np.sort(_pykernels.uniform_classes(k, n)))


@pytest.mark.skipif(_ckernels is None, reason="extension not built")
@pytest.mark.parametrize("kp, n, comp, k", [(2, 6, True, 4), (2, 5, False, 2),
                                            (3, 5, False, 3), (1, 5, True, 4)])
def test_backends_agree_on_probe(kp, n, comp, k):
    masks = _pykernels.uniform_classes(kp, n)
    assert np.array_equal(_ckernels.probe_classes(masks, kp, n, comp, k),
                          _pykernels.probe_classes(masks, kp, n, comp, k))


def test_pure_python_switch():
    import os
    import subprocess
    import sys
    env = dict(os.environ, HYPERSPEC_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "from hyperspec import kernels; print(kernels.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
