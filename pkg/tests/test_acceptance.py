"""Acceptance criteria 1-9, one PASS/FAIL line each (echoed in the summary)."""

import math
import random
import time
import warnings
from fractions import Fraction

import numpy as np
import pytest

from hyperspec import corpus, kernels
from hyperspec.generation import canonical_form, census, trees
from hyperspec.hypergraph import (
    Hypergraph, complete_uniform, cycle, find_half_sum_labeling, find_odd_bipartition,
    is_connected, path, power_hypergraph, star,
)
from hyperspec.spectra import (
    EigenPair, extend_eigenvector_zero, graph_spectrum, lift_adjacency_eigenpair, lift_regular_lap, lift_regular_slap,
    neg_rho_witness, slap_null_witness, spectral_radius_power,
)
from hyperspec.tensor import HypergraphOperator, Tensor, hypergraph_tensor
from hyperspec.trace import (
    TraceBudget, charpoly_coefficients, charpoly_n2, laplacian_trace_formula,
    regular_coefficient_formula, spectrum_n2, trace_d,
)

TRACE_CORPUS = corpus.trace_corpus()


def _rho_adj(H):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        return spectral_radius_power(HypergraphOperator(H, "adj")).lam


def test_criterion_1_matrix_calibration(acceptance_line):
    rng = random.Random(2024)
    start = time.perf_counter()
    bad = 0
    budget = TraceBudget(max_d=5)
    for _ in range(25):
        n = rng.randint(1, 4)
        M = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)]
        P = np.array(M, dtype=object)
        for d in range(1, 6):
            if trace_d(Tensor.from_matrix(M), d, budget) != np.trace(np.linalg.matrix_power(P, d)):
                bad += 1
    elapsed = time.perf_counter() - start
    ok = bad == 0 and elapsed < 5
    acceptance_line(1, ok, f"25 matrices x d<=5, mismatches={bad}, {elapsed:.2f}s (< 5s)")
    assert ok


def test_criterion_2_adjacency_vanishing(acceptance_line):
    start = time.perf_counter()
    bad, checked = [], 0
    for name, H in TRACE_CORPUS.items():
        A = hypergraph_tensor(H, "adj")
        for d in range(1, H.k):
            checked += 1
            if trace_d(A, d) != 0:
                bad.append((name, d))
    elapsed = time.perf_counter() - start
    ok = not bad and len(TRACE_CORPUS) >= 20 and elapsed < 60
    acceptance_line(2, ok, f"{len(TRACE_CORPUS)} hypergraphs, {checked} traces zero, "
                           f"nonzero={bad}, {elapsed:.2f}s (< 60s)")
    assert ok


def test_criterion_3_laplacian_closed_forms(acceptance_line):
    start = time.perf_counter()
    bad, checked = [], 0
    for name, H in TRACE_CORPUS.items():
        for signless, kind in ((False, "lap"), (True, "slap")):
            T = hypergraph_tensor(H, kind)
            for t in range(1, H.k + 1):
                checked += 1
                if trace_d(T, t) != laplacian_trace_formula(H, t, signless):
                    bad.append((name, kind, t))
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 600
    acceptance_line(3, ok, f"{checked} exact comparisons (t<=k, L and Q), "
                           f"differ={bad}, {elapsed:.2f}s (< 600s)")
    assert ok


def test_criterion_4_regular_coefficients(acceptance_line):
    cases = {"K3_4 (d=3)": (complete_uniform(3, 4), 3),
             "cycle4_6 (d=2)": corpus.regular_corpus()["cycle4_6"]}
    bad, checked = [], 0
    for name, (H, d) in cases.items():
        for idx, kind in ((0, "lap"), (1, "slap")):
            T = hypergraph_tensor(H, kind)
            traces = [trace_d(T, t) for t in range(1, H.k + 1)]
            want = [regular_coefficient_formula(H.n, H.k, d, t)[idx] for t in range(1, H.k + 1)]
            checked += 1
            if charpoly_coefficients(traces) != want:
                bad.append((name, kind))
    ok = not bad
    acceptance_line(4, ok, f"{checked} coefficient vectors exact for t<=k, differ={bad}")
    assert ok


def test_criterion_5_n2_oracle(acceptance_line):
    rng = random.Random(55)
    worst_tr = worst_p = 0.0
    for i in range(10):
        k = 3 if i % 2 == 0 else 4
        entries = {}
        for idx in np.ndindex(*(2,) * k):
            if rng.random() < 0.6:
                entries[tuple(j + 1 for j in idx)] = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
        T = Tensor.from_entries(k, 2, entries)
        eigs = spectrum_n2(T)
        traces = [trace_d(T, d) for d in range(1, k + 1)]
        for d in range(1, k + 1):
            worst_tr = max(worst_tr, abs(sum(z ** d for z in eigs) - complex(traces[d - 1])))
        P = charpoly_n2(T).descending()
        newton = charpoly_coefficients(traces)
        worst_p = max(worst_p, max(abs(complex(P[t]) - complex(newton[t - 1])) for t in range(1, k + 1)))
    ok = worst_tr <= 1e-8 and worst_p <= 1e-8
    acceptance_line(5, ok, f"10 tensors: max |sum lambda^d - Tr_d| = {worst_tr:.2e}, "
                           f"max |p_t - resultant coeff| = {worst_p:.2e} (<= 1e-8)")
    assert ok


def test_criterion_6_power_radius(acceptance_line):
    graphs = {"K2": path(2), "P3": path(3), "C3": cycle(3), "S4": star(4), "P4": path(4)}
    worst, decreasing = 0.0, True
    for name, G in graphs.items():
        rho = float(np.max(graph_spectrum(G)[0]))
        vals = []
        for k in (3, 4, 5):
            got = _rho_adj(power_hypergraph(G, k))
            worst = max(worst, abs(got - rho ** (2 / k)))
            vals.append(got)
        if rho > 1 + 1e-9:
            decreasing &= all(a > b for a, b in zip(vals, vals[1:]))
    # the sequence heads to 1: check far out on the edge-list operator
    far = abs(_rho_adj(power_hypergraph(cycle(3), 12)) - 2 ** (1 / 6))
    worst = max(worst, far)
    # trees on 6 vertices: the path is the unique minimum and the star the unique maximum
    margins = []
    ends = {canonical_form(6, path(6).edges), canonical_form(6, star(6).edges)}
    for k in (3, 4):
        lo, hi = _rho_adj(power_hypergraph(path(6), k)), _rho_adj(power_hypergraph(star(6), k))
        rest = [_rho_adj(power_hypergraph(T, k)) for T in trees(6)
                if canonical_form(6, T.edges) not in ends]
        margins.append(min(min(rest) - lo, hi - max(rest)))
    extremal = len(trees(6)) == 6 and min(margins) > 1e-6
    ok = worst <= 1e-6 and decreasing and extremal
    acceptance_line(6, ok, f"max |rho(G^k) - rho(G)^(2/k)| = {worst:.2e} (<= 1e-6, incl. C3^12), "
                           f"strictly decreasing={decreasing}, tree extremality margin "
                           f"{min(margins):.3e}")
    assert ok


def test_criterion_7_signless_laplacian_lifts(acceptance_line):
    G = cycle(3)
    w, V = graph_spectrum(G)
    worst, roots_ok = 0.0, True
    slap_values = []
    for alpha in (2, -1):
        i = int(np.argmin(np.abs(w - alpha)))
        rep = lift_regular_slap(G, alpha, V[:, i], 4)
        roots_ok &= len(rep.witnesses) == 2
        worst = max(worst, max(p.residual for p in rep.witnesses))
        slap_values += rep.lifted_values
        # each lifted value is a root of (lambda-2)(lambda-1) = alpha
        roots_ok &= all(abs((z - 2) * (z - 1) - alpha) < 1e-9 for z in rep.lifted_values)
    rho_q = spectral_radius_power(HypergraphOperator(power_hypergraph(G, 4), "slap")).lam
    rho_ok = abs(rho_q - 3) <= 1e-6 and abs(max(z.real for z in slap_values) - 3) <= 1e-6
    lap_values = []
    for alpha in (2, -1):
        i = int(np.argmin(np.abs(w - alpha)))
        rep = lift_regular_lap(G, alpha, V[:, i], 4)
        worst = max(worst, max(p.residual for p in rep.witnesses))
        lap_values += rep.lifted_values
    zero_ok = any(abs(z) < 1e-9 for z in lap_values)
    rhos = [spectral_radius_power(HypergraphOperator(power_hypergraph(G, k), "slap")).lam
            for k in (4, 6, 8)]
    decreasing = all(a > b for a, b in zip(rhos, rhos[1:]))
    ok = worst <= 1e-8 and roots_ok and rho_ok and zero_ok and decreasing
    acceptance_line(7, ok, f"C3^4 lifts: max residual {worst:.2e} (<= 1e-8), rho(Q)={rho_q:.9f}, "
                           f"Laplacian roots include 0={zero_ok}, rho(Q_C3^k) k=4,6,8 = "
                           + ", ".join(f"{r:.6f}" for r in rhos))
    assert ok


def _even_corpus():
    out = {f"{n}": H for n, H in TRACE_CORPUS.items() if H.k % 2 == 0}
    out.update({f"graph-{n}": G for n, G in corpus.graph_corpus().items()})
    for n, G in corpus.graph_corpus().items():
        out[f"{n}^6"] = power_hypergraph(G, 6)
    out["edge6"] = complete_uniform(6, 6)
    out["K6_7"] = complete_uniform(6, 7)
    return out


def test_criterion_8_odd_bipartite_witnesses(acceptance_line):
    start = time.perf_counter()
    even = _even_corpus()
    null_bad, neg_worst, agree_bad, n_null, n_neg = [], 0.0, [], 0, 0
    for name, H in even.items():
        V1 = find_odd_bipartition(H)
        f = find_half_sum_labeling(H)
        if V1 is not None:
            n_null += 1
            if slap_null_witness(H, V1).residual != 0:
                null_bad.append(name)
        if f is not None and H.m and is_connected(H):
            n_neg += 1
            neg_worst = max(neg_worst, neg_rho_witness(H, f).residual)
        if H.k % 4 and (V1 is None) != (f is None):
            agree_bad.append(name)
    # the same agreement over every class of graphs and 6-uniform hypergraphs in reach
    sweep = [census(2, n) for n in range(2, 8)] + [census(6, n) for n in range(6, 9)]
    agree_bad += [(c.k, c.n) for c in sweep if c.half_sum_only or c.odd_bip_only]
    # k = 4: every class on n <= 7 vertices, counted exhaustively
    levels = [census(4, n, keep=1) for n in range(4, 8)]
    expected_classes = {4: 2, 5: 6, 6: 156, 7: 7013320}  # complements of 0/1/2/3-uniform classes
    complete = all(c.classes == expected_classes[c.n] for c in levels)
    violations = sum(c.violations + c.odd_bip_only for c in levels)
    report = "; ".join(f"n={c.n}: {c.connected} connected, (1)&(4)={c.both}, "
                       f"(4)&!(1)={c.half_sum_only}, (1)&!(4)={c.odd_bip_only}, "
                       f"neither={c.neither}" for c in levels)
    elapsed = time.perf_counter() - start
    print("k=4 implication report:", report)
    ok = (not null_bad and neg_worst <= 1e-8 and not agree_bad and complete
          and violations == 0 and n_null > 0 and n_neg > 0)
    acceptance_line(8, ok, f"{n_null} null witnesses exact, max -rho residual {neg_worst:.2e} "
                           f"over {n_neg}; (1)<=>(4) for k in {{2,6}} mismatches={agree_bad}; "
                           f"k=4 n<=7 census complete={complete} "
                           f"({sum(c.classes for c in levels)} classes, "
                           f"(4)&!(1)={sum(c.half_sum_only for c in levels)}, "
                           f"(1)=>(4) violations={violations}) [{kernels.BACKEND}, {elapsed:.0f}s]")
    assert ok


def _zero_extension_instances():
    """(H, e, pair on H - e) with e carrying at least two new core vertices."""
    out = []
    # regular bases with the all-ones Perron vector
    for base, d in ((complete_uniform(3, 4), 3), (complete_uniform(4, 5), 4),
                    (complete_uniform(3, 5), 6)):
        # e meets the base in `attach` vertices; the other k - attach are new cores
        for attach in sorted({0, 1, base.k - 2}):
            n0 = base.n
            e = tuple(range(1, attach + 1)) + tuple(range(n0 + 1, n0 + 1 + base.k - attach))
            H = Hypergraph(base.k, n0 + base.k - attach, base.edges + (e,))
            out.append((H, e, EigenPair(Fraction(d), [1] * n0, Fraction(0))))
    # lifted adjacency pairs of power hypergraphs (irrational entries)
    for G, k in ((cycle(4), 4), (path(4), 3), (star(4), 5)):
        w, V = graph_spectrum(G)
        i = int(np.argmax(w))
        pair = lift_adjacency_eigenpair(G, w[i], V[:, i], k)
        Gk = power_hypergraph(G, k)
        e = (1,) + tuple(range(Gk.n + 1, Gk.n + k))
        H = Hypergraph(k, Gk.n + k - 1, Gk.edges + (e,))
        out.append((H, e, pair))
    return out


def test_criterion_9_zero_extension(acceptance_line):
    cases = _zero_extension_instances()
    worst = 0.0
    for H, e, pair in cases:
        out = extend_eigenvector_zero(H, e, pair)
        worst = max(worst, float(out.residual))
        assert out.lam == pair.lam
    ok = len(cases) >= 10 and worst <= 1e-10
    acceptance_line(9, ok, f"{len(cases)} (H, e) instances, max residual {worst:.2e} (<= 1e-10)")
    assert ok
