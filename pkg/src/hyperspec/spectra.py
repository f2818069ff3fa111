"""Eigenpairs of hypergraph tensors: residuals, Perron pairs by shifted power
iteration, and explicit eigenvector constructions (power-hypergraph lifts,
zero extension across core vertices, odd-bipartite witnesses)."""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence, Union

import numpy as np

from hyperspec.hypergraph import (
    Hypergraph, Labeling, bipartition_sign_vector, core_vertices, degrees,
    find_half_sum_labeling, find_odd_bipartition, is_connected,
    is_half_sum_labeling, is_odd_bipartition, is_regular, power_core_map,
    power_hypergraph, remove_edge_with_cores,
)
from hyperspec.polynomial import Polynomial, poly_roots
from hyperspec.tensor import HypergraphOperator, Tensor, is_exact

Operator = Union[Tensor, HypergraphOperator]

EIGEN_TOL = 1e-8
POWER_GAP_TOL = 1e-10
REAL_ROOT_TOL = 1e-9
ZERO_ALPHA_TOL = 1e-12


class ConvergenceError(ArithmeticError):
    """An iterative solver ran out of iterations."""


class WitnessError(ValueError):
    """A constructed eigenvector failed its residual check."""


@dataclass
class EigenPair:
    lam: complex | Fraction
    x: list
    residual: float | Fraction

    @property
    def exact(self) -> bool:
        return isinstance(self.residual, Fraction)


@dataclass
class LiftReport:
    source_eigenvalue: complex
    lifted_values: list[complex]
    witnesses: list[EigenPair]
    tensor_kind: str
    spectral_radius: float | None = None
    warnings: list[str] = field(default_factory=list)


def _as_operator(T) -> Operator:
    if isinstance(T, Hypergraph):
        return HypergraphOperator(T, "adj")
    return T


def residual(T: Operator, lam, x: Sequence) -> float | Fraction:
    """``max_i |(Tx)_i - lam x_i^(k-1)|`` with ``x`` scaled to max-norm 1.

    Exact (a Fraction) when the tensor, ``lam`` and ``x`` are all exact.
    """
    T = _as_operator(T)
    k = T.order
    exact = T.exact and is_exact(lam) and all(is_exact(v) for v in x)
    if exact:
        xs = [Fraction(v) for v in x]
        scale = max(abs(v) for v in xs) if xs else 0
        if scale == 0:
            raise ValueError("eigenvector must be nonzero")
        xs = [v / scale for v in xs]
        Tx = T.apply(xs)
        return max((abs(Tx[i] - Fraction(lam) * xs[i] ** (k - 1)) for i in range(len(xs))),
                   default=Fraction(0))
    xv = np.asarray([complex(v) for v in x], dtype=np.complex128)
    scale = np.max(np.abs(xv)) if xv.size else 0.0
    if scale == 0:
        raise ValueError("eigenvector must be nonzero")
    xv = xv / scale
    Tx = np.asarray(T.apply(xv), dtype=np.complex128)
    return float(np.max(np.abs(Tx - complex(lam) * xv ** (k - 1)))) if xv.size else 0.0


def make_pair(T: Operator, lam, x: Sequence) -> EigenPair:
    return EigenPair(lam, list(x), residual(T, lam, x))


# -- Perron pairs -------------------------------------------------------------

def _real_apply(T: Operator):
    if isinstance(T, Tensor):
        data = np.real(T.numeric().data).astype(np.float64)

        def f(x):
            out = data
            for _ in range(T.order - 1):
                out = out @ x
            return out
        return f
    return lambda x: np.real(T.apply(x.astype(np.complex128)))


def _check_nonnegative(T: Operator):
    if isinstance(T, HypergraphOperator):
        if T.kind == "lap":
            raise ValueError("Laplacian tensor has negative entries")
        return
    data = T.numeric().data
    if np.any(np.abs(data.imag) > 0) or np.any(data.real < 0):
        raise ValueError("power iteration needs an entrywise nonnegative tensor")


def spectral_radius_power(T: Operator, tol: float = POWER_GAP_TOL,
                          max_iter: int = 200_000) -> EigenPair:
    """Perron pair of a nonnegative tensor by shifted power iteration.

    Iterates ``x <- (Tx + s x^[k-1])^[1/(k-1)]`` and stops when the
    Collatz-Wielandt bounds ``min/max (Tx)_i / x_i^(k-1)`` are within ``tol``.
    Disconnected supports are handled per component (with a warning) and the
    largest value wins.
    """
    T = _as_operator(T)
    _check_nonnegative(T)
    comps = T.support_components()
    if T.dim == 0:
        raise ValueError("empty tensor")
    if len(comps) > 1:
        warnings.warn(f"tensor support has {len(comps)} components; taking the max over components",
                      RuntimeWarning, stacklevel=2)
        best = None
        for comp in comps:
            sub = spectral_radius_power(T.restrict(comp), tol, max_iter) if len(comp) < T.dim else None
            if best is None or sub.lam > best[0].lam:
                best = (sub, comp)
        sub, comp = best
        x = [0.0] * T.dim
        for v, val in zip(comp, sub.x):
            x[v - 1] = val
        return make_pair(T, sub.lam, x)
    k = T.order
    f = _real_apply(T)
    diag = [float(np.real(complex(v))) for v in T.diagonal()]
    shift = max(diag) if diag and max(diag) > 0 else 1.0
    x = np.ones(T.dim)
    for _ in range(max_iter):
        xk = x ** (k - 1)
        y = f(x) + shift * xk
        ratio = y / xk
        lo, hi = float(ratio.min()), float(ratio.max())
        if hi - lo < tol:
            rho = 0.5 * (lo + hi) - shift
            pair = make_pair(T, rho, list(x))
            if pair.residual > 10 * tol:
                raise ConvergenceError(f"Perron residual {pair.residual:.2e} above {10 * tol:.1e}")
            return pair
        x = y ** (1.0 / (k - 1))
        x /= x.max()
    raise ConvergenceError(f"power iteration did not converge in {max_iter} steps "
                           f"(Collatz-Wielandt gap {hi - lo:.3e})")


def graph_spectrum(G: Hypergraph) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (ascending) and orthonormal eigenvectors of a graph's adjacency matrix."""
    if G.k != 2:
        raise ValueError("graph spectrum needs a 2-uniform input")
    A = np.zeros((G.n, G.n))
    for i, j in G.edges:
        A[i - 1, j - 1] = A[j - 1, i - 1] = 1.0
    return np.linalg.eigh(A)


def _graph_residual(G: Hypergraph, alpha, x) -> float:
    return residual(HypergraphOperator(G, "adj"), complex(alpha), [complex(v) for v in x])


def largest_real_root(roots: Sequence[complex]) -> float | None:
    reals = [r.real for r in roots if abs(r.imag) < REAL_ROOT_TOL]
    return max(reals) if reals else None


# -- power hypergraph lifts ---------------------------------------------------

def _kth_roots(x: Sequence, k: int) -> list[complex]:
    # principal k-th roots; the lifted vectors only use integer powers of these
    return [complex(v) ** (1.0 / k) if v != 0 else 0j for v in x]


def lift_adjacency_eigenpair(G: Hypergraph, alpha, x: Sequence, k: int) -> EigenPair:
    """Eigenpair ``(alpha^(2/k), y)`` of ``A_{G^k}`` from an adjacency eigenpair of ``G``.

    With ``r = x^(1/k)`` and ``mu = alpha^(1/k)``: ``y_u = r_u^2`` on ``V(G)`` and
    ``r_i r_j / mu`` on the core vertices of edge ``{i, j}``.
    """
    if abs(complex(alpha)) < ZERO_ALPHA_TOL:
        raise ValueError("alpha must be nonzero")
    if k < 3:
        raise ValueError("power needs k >= 3")
    res = _graph_residual(G, alpha, x)
    if res > 1e-10:
        raise ValueError(f"input pair is not an eigenpair of G (residual {res:.2e})")
    Gk = power_hypergraph(G, k)
    r = _kth_roots(x, k)
    mu = complex(alpha) ** (1.0 / k)
    y = [0j] * Gk.n
    for u in G.vertices:
        y[u - 1] = r[u - 1] ** 2
    for (i, j), cores in power_core_map(G, k).items():
        for c in cores:
            y[c - 1] = r[i - 1] * r[j - 1] / mu
    lam = mu ** 2
    pair = make_pair(HypergraphOperator(Gk, "adj"), lam, y)
    if pair.residual > EIGEN_TOL:
        raise WitnessError(f"lifted adjacency pair failed verification (residual {pair.residual:.2e})")
    return pair


def _lift_polynomial(d: int, alpha, k: int, kind: str) -> Polynomial:
    h = (k - 2) // 2
    a = Fraction(alpha) if is_exact(alpha) else complex(alpha)
    if kind == "slap":
        return Polynomial([-d, 1]) * Polynomial([-1, 1]) ** h - a
    return Polynomial([d, -1]) * Polynomial([1, -1]) ** h - a


def lift_regular(G: Hypergraph, alpha, x: Sequence, k: int, kind: str = "slap",
                 d: int | None = None) -> LiftReport:
    """Signless-Laplacian (``kind='slap'``) or Laplacian (``'lap'``) eigenpairs of
    ``G^k`` from an adjacency eigenpair ``(alpha, x)`` of a d-regular graph.

    The eigenvalues are the roots of ``(x-d)(x-1)^((k-2)/2) = alpha`` (slap) or
    ``(d-x)(1-x)^((k-2)/2) = alpha`` (lap). Each root gets an explicit
    eigenvector, checked by residual.
    """
    if kind not in ("slap", "lap"):
        raise ValueError("kind must be 'slap' or 'lap'")
    if G.k != 2:
        raise ValueError("lift needs a graph (2-uniform input)")
    if k % 2 or k < 4:
        raise ValueError("lift needs an even k >= 4")
    reg = is_regular(G)
    if reg is None:
        raise ValueError("graph is not regular")
    if d is not None and d != reg:
        raise ValueError(f"graph is {reg}-regular, not {d}-regular")
    d = reg
    if abs(complex(alpha)) < ZERO_ALPHA_TOL:
        raise ValueError("alpha must be nonzero")
    res = _graph_residual(G, alpha, x)
    if res > 1e-10:
        raise ValueError(f"input pair is not an eigenpair of G (residual {res:.2e})")
    poly = _lift_polynomial(d, alpha, k, kind)
    roots = poly_roots(poly)
    Gk = power_hypergraph(G, k)
    op = HypergraphOperator(Gk, kind)
    r = _kth_roots(x, k)
    cores = power_core_map(G, k)
    witnesses = []
    for lam in roots:
        if abs(lam - 1) < REAL_ROOT_TOL:
            raise WitnessError("root equal to 1; the construction divides by lambda - 1")
        s = cmath.sqrt(lam - 1 if kind == "slap" else 1 - lam)
        y = [0j] * Gk.n
        for u in G.vertices:
            y[u - 1] = r[u - 1] ** 2
        for (i, j), cs in cores.items():
            for c in cs:
                y[c - 1] = r[i - 1] * r[j - 1] / s
        pair = make_pair(op, lam, y)
        if pair.residual > EIGEN_TOL:
            raise WitnessError(f"lifted {kind} pair for root {lam} failed verification "
                               f"(residual {pair.residual:.2e})")
        witnesses.append(pair)
    report = LiftReport(complex(alpha), list(roots), witnesses, kind)
    if kind == "slap" and abs(complex(alpha) - d) < 1e-12:
        report.spectral_radius = largest_real_root(roots)
    return report


def lift_regular_slap(G, alpha, x, k, d=None) -> LiftReport:
    return lift_regular(G, alpha, x, k, "slap", d)


def lift_regular_lap(G, alpha, x, k, d=None) -> LiftReport:
    return lift_regular(G, alpha, x, k, "lap", d)


def slap_spectral_radius_formula(d: int, k: int) -> float:
    """Largest real root of ``(x-d)(x-1)^((k-2)/2) = d``."""
    return largest_real_root(poly_roots(_lift_polynomial(d, d, k, "slap")))


# -- core-vertex extension ----------------------------------------------------

def extend_eigenvector_zero(H: Hypergraph, e: Sequence[int], pair: EigenPair,
                            tensor_kind: str = "adj") -> EigenPair:
    """Lift an adjacency eigenpair of ``H - e`` to ``H`` by zeros on the
    deleted core vertices of ``e`` (needs at least two of them)."""
    if tensor_kind != "adj":
        raise ValueError("zero extension is only valid for adjacency eigenpairs")
    e = tuple(sorted(e))
    if e not in H.edges:
        raise ValueError(f"{e} is not an edge of H")
    cores = core_vertices(H) & set(e)
    if len(cores) < 2:
        raise ValueError(f"edge {e} has {len(cores)} core vertices; at least two are needed")
    sub, mapping = remove_edge_with_cores(H, e)
    if len(pair.x) != sub.n:
        raise ValueError("eigenvector length does not match H - e")
    res = residual(HypergraphOperator(sub, "adj"), pair.lam, pair.x)
    if res > 1e-10:
        raise ValueError(f"input pair is not an eigenpair of H - e (residual {float(res):.2e})")
    zero = Fraction(0) if all(is_exact(v) for v in pair.x) else 0j
    y = [zero] * H.n
    for old, new in mapping.items():
        y[old - 1] = pair.x[new - 1]
    out = make_pair(HypergraphOperator(H, "adj"), pair.lam, y)
    if out.residual > 1e-10:
        raise WitnessError(f"zero extension failed verification (residual {float(out.residual):.2e})")
    return out


# -- odd-bipartite witnesses ----------------------------------------------------

def slap_null_witness(H: Hypergraph, V1) -> EigenPair:
    """``Q_H x = 0`` with ``x = -1`` on ``V1`` and ``+1`` elsewhere, exactly."""
    if H.k % 2:
        raise ValueError("needs even k")
    if isinstance(V1, Labeling):
        V1 = V1.part()
    x = bipartition_sign_vector(H, V1)
    pair = make_pair(HypergraphOperator(H, "slap"), 0, x)
    if pair.residual != 0:
        raise WitnessError(f"sign vector is not a null vector (residual {pair.residual})")
    return pair


def phase_vector(f: Sequence[int], k: int) -> list:
    """``exp(2 pi i f_j / k)``; plain integers when every phase is real."""
    if all((2 * v) % k == 0 for v in f):
        return [1 if (2 * v // k) % 2 == 0 else -1 for v in f]
    return [_phase(v, k) for v in f]


def _phase(v: int, k: int) -> complex:
    quarter, rem = divmod(4 * v, k)
    if rem == 0:
        return (1, 1j, -1, -1j)[quarter % 4] + 0j
    return cmath.exp(2j * math.pi * v / k)


def slap_phase_witness(H: Hypergraph, f: Sequence[int] | Labeling) -> EigenPair:
    """Zero eigenpair of ``Q_H`` from a half-sum labeling."""
    vals = f.values if isinstance(f, Labeling) else tuple(f)
    if not is_half_sum_labeling(H, vals):
        raise ValueError("not a half-sum labeling")
    pair = make_pair(HypergraphOperator(H, "slap"), 0, phase_vector(vals, H.k))
    if pair.residual > 1e-12:
        raise WitnessError(f"phase vector failed verification (residual {float(pair.residual):.2e})")
    return pair


def neg_rho_witness(H: Hypergraph, f: Sequence[int] | Labeling) -> EigenPair:
    """Eigenpair ``(-rho(A_H), y)`` with ``y_i = exp(2 pi i f_i / k) v_i``, ``v`` Perron."""
    if H.k % 2:
        raise ValueError("needs even k")
    if not is_connected(H):
        raise ValueError("hypergraph must be connected")
    vals = f.values if isinstance(f, Labeling) else tuple(f)
    if not is_half_sum_labeling(H, vals):
        raise ValueError("not a half-sum labeling")
    op = HypergraphOperator(H, "adj")
    perron = spectral_radius_power(op)
    phases = [_phase(v, H.k) for v in vals]
    y = [p * v for p, v in zip(phases, perron.x)]
    pair = make_pair(op, -perron.lam, y)
    if pair.residual > EIGEN_TOL:
        raise WitnessError(f"-rho witness failed verification (residual {pair.residual:.2e})")
    return pair


@dataclass
class ProbeReport:
    k: int
    n: int
    m: int
    odd_bipartite: bool           # condition (1): k even and odd-bipartite
    half_sum: bool                # condition (4)
    bipartition: frozenset | None
    labeling: tuple[int, ...] | None
    zero_slap: EigenPair | None   # witness for condition (2)
    neg_rho: EigenPair | None     # witness for condition (3)

    @property
    def specimen(self) -> bool:
        """Half-sum labeling without an odd bipartition."""
        return self.half_sum and not self.odd_bipartite

    @property
    def consistent(self) -> bool:
        witnessed = self.zero_slap is not None and self.neg_rho is not None
        return (not self.odd_bipartite or self.half_sum) and (witnessed == self.half_sum)


def conjecture_probe(H: Hypergraph, witnesses: bool = True) -> ProbeReport:
    """Evaluate the four labeling / eigenvalue conditions on a connected ``H``.

    Conditions (1) and (4) are decided exactly. When (4) holds, (2) and (3)
    get constructive, residual-checked witnesses.
    """
    if not is_connected(H):
        raise ValueError("hypergraph must be connected")
    odd = None
    if H.k % 2 == 0:
        odd = find_odd_bipartition(H)
    lab = find_half_sum_labeling(H)
    z = neg = None
    if lab is not None and witnesses:
        z = slap_phase_witness(H, lab)
        neg = neg_rho_witness(H, lab)
    return ProbeReport(H.k, H.n, H.m, odd is not None, lab is not None,
                       odd.part() if odd is not None else None,
                       lab.values if lab is not None else None, z, neg)


def verify_odd_bipartition(H: Hypergraph, V1) -> bool:
    return is_odd_bipartition(H, V1)


def degree_vector(H: Hypergraph) -> list[int]:
    return list(degrees(H))
