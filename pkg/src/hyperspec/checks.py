"""Quick invariant battery behind ``hyperspec check``."""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Callable

import numpy as np

from hyperspec import corpus
from hyperspec.hypergraph import (
    degrees, find_half_sum_labeling, find_odd_bipartition, is_connected,
    parse_hypergraph, power_hypergraph, serialize_hypergraph,
)
from hyperspec.spectra import (
    graph_spectrum, lift_adjacency_eigenpair, neg_rho_witness, residual,
    slap_null_witness, spectral_radius_power,
)
from hyperspec.tensor import HypergraphOperator, hypergraph_tensor
from hyperspec.trace import (
    charpoly_coefficients, laplacian_trace_formula, regular_coefficient_formula, trace_d,
)


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: str


def _handshake():
    bad = [n for n, H in corpus.trace_corpus().items() if sum(degrees(H)) != H.k * H.m]
    return not bad, f"violations: {bad}" if bad else "sum d_i = k|E| on corpus"


def _roundtrip():
    bad = [n for n, H in corpus.trace_corpus().items()
           if parse_hypergraph(serialize_hypergraph(H)) != H]
    return not bad, f"violations: {bad}" if bad else "parse(serialize(H)) = H"


def _adj_vanishing():
    bad = []
    for name, H in corpus.trace_corpus().items():
        A = hypergraph_tensor(H, "adj")
        bad += [(name, d) for d in range(1, H.k) if trace_d(A, d) != 0]
    return not bad, f"nonzero: {bad}" if bad else "Tr_d(A) = 0 for d < k"


def _laplacian_traces():
    bad = []
    for name, H in corpus.trace_corpus().items():
        for signless, kind in ((False, "lap"), (True, "slap")):
            T = hypergraph_tensor(H, kind)
            bad += [(name, kind, t) for t in range(1, H.k + 1)
                    if trace_d(T, t) != laplacian_trace_formula(H, t, signless)]
    return not bad, f"DIFFER: {bad}" if bad else "closed forms EQUAL for t <= k"


def _regular_coefficients():
    bad = []
    for name, (H, d) in corpus.regular_corpus().items():
        for signless, idx in ((False, 0), (True, 1)):
            traces = [laplacian_trace_formula(H, t, signless) for t in range(1, H.k + 1)]
            p = charpoly_coefficients(traces)
            want = [regular_coefficient_formula(H.n, H.k, d, t)[idx] for t in range(1, H.k + 1)]
            if p != want:
                bad.append((name, "Q" if signless else "L"))
    return not bad, f"DIFFER: {bad}" if bad else "Newton coefficients match regular formula"


def _laplacian_null():
    bad = [n for n, H in corpus.trace_corpus().items()
           if H.n and residual(HypergraphOperator(H, "lap"), 0, [1] * H.n) != 0]
    return not bad, f"violations: {bad}" if bad else "L 1 = 0 exactly"


def _odd_bipartite_witnesses():
    count = 0
    for name, H in corpus.trace_corpus().items():
        if H.k % 2 or not H.m:
            continue
        V1 = find_odd_bipartition(H)
        if V1 is None:
            continue
        if slap_null_witness(H, V1).residual != 0:
            return False, f"{name}: nonzero residual"
        if is_connected(H):
            f = find_half_sum_labeling(H)
            if f is None or neg_rho_witness(H, f).residual > 1e-8:
                return False, f"{name}: -rho witness failed"
        count += 1
    return True, f"{count} witnesses verified"


def _power_radius():
    worst = 0.0
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        for G in corpus.graph_corpus().values():
            rho = float(np.max(graph_spectrum(G)[0]))
            for k in (3, 4, 5):
                got = spectral_radius_power(HypergraphOperator(power_hypergraph(G, k), "adj")).lam
                worst = max(worst, abs(got - rho ** (2 / k)))
    return worst <= 1e-6, f"max |rho(G^k) - rho(G)^(2/k)| = {worst:.2e}"


def _adjacency_lift():
    worst = 0.0
    for G in corpus.graph_corpus().values():
        w, V = graph_spectrum(G)
        for i in range(len(w)):
            if abs(w[i]) > 1e-9 and w[i] > 0:
                worst = max(worst, lift_adjacency_eigenpair(G, w[i], V[:, i], 4).residual)
    return worst <= 1e-8, f"max lift residual {worst:.2e}"


CHECKS: list[tuple[str, Callable[[], tuple[bool, str]]]] = [
    ("handshake", _handshake),
    ("hgf-roundtrip", _roundtrip),
    ("adjacency-trace-vanishing", _adj_vanishing),
    ("laplacian-trace-closed-form", _laplacian_traces),
    ("regular-coefficients", _regular_coefficients),
    ("laplacian-null-vector", _laplacian_null),
    ("odd-bipartite-witnesses", _odd_bipartite_witnesses),
    ("power-hypergraph-radius", _power_radius),
    ("adjacency-lift-residual", _adjacency_lift),
]


def run_checks() -> list[CheckResult]:
    out = []
    for name, fn in CHECKS:
        try:
            ok, detail = fn()
        except Exception as exc:  # a crash is a failed check, reported not raised
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        out.append(CheckResult(name, ok, detail))
    return out

