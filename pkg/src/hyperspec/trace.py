"""Generalized traces of tensors and the characteristic-polynomial data they
determine.

``trace_d`` evaluates the combinatorial trace formula: a sum over k-valent
index families ``F`` weighted by ``b(F)/c(F) * pi_F(T) * |W(F)|`` where
``|W(F)|`` counts closed walks on the arc multiset of ``F``.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from hyperspec import kernels
from hyperspec.hypergraph import Hypergraph, degree_power_sum
from hyperspec.polynomial import Polynomial, determinant, poly_roots
from hyperspec.tensor import Tensor

# Walk counts are arc sequences with a designated first arc; parallel arcs are
# interchangeable. With this convention the matrix case reproduces tr(A^d)
# with no rescaling, so the normalization constant is 1.
WALK_START_NORMALIZATION = 1


class BudgetExceeded(ValueError):
    """The requested trace is outside the enumeration budget."""


@dataclass(frozen=True)
class TraceBudget:
    max_dim: int = 8
    max_d: int | None = None  # None: d may not exceed the tensor order

    def check(self, T: Tensor, d: int):
        if d < 1:
            raise ValueError("trace order d must be >= 1")
        if T.dim > self.max_dim:
            raise BudgetExceeded(f"dimension {T.dim} exceeds the trace budget ({self.max_dim})")
        limit = T.order if self.max_d is None else self.max_d
        if d > limit:
            raise BudgetExceeded(f"d={d} exceeds the trace budget (d <= {limit})")


DEFAULT_BUDGET = TraceBudget()


@dataclass(frozen=True)
class TraceTerm:
    F: tuple[tuple[int, ...], ...]
    arcs: tuple[tuple[tuple[int, int], int], ...]  # ((tail, head), multiplicity)
    b: int
    c: int
    pi: object
    walk_count: int

    @property
    def contribution(self):
        return Fraction(self.b, self.c) * self.pi * self.walk_count


def arc_multiset(F: Iterable[Sequence[int]]) -> Counter:
    arcs: Counter = Counter()
    for idx in F:
        for v in idx[1:]:
            arcs[(idx[0], v)] += 1
    return arcs


def count_closed_walks(arcs) -> int:
    """Closed walks traversing the arc multiset exactly (designated start).

    ``arcs`` is a mapping ``(tail, head) -> multiplicity`` or an iterable of
    arcs with repeats.
    """
    if not isinstance(arcs, dict):
        arcs = Counter(tuple(a) for a in arcs)
    items = sorted((a, c) for a, c in arcs.items() if c > 0)
    if not items:
        return 0
    tails = [a[0] for a, _ in items]
    heads = [a[1] for a, _ in items]
    mults = [c for _, c in items]
    return WALK_START_NORMALIZATION * kernels.count_closed_walks(tails, heads, mults)


def _b_and_c(arcs: Counter) -> tuple[int, int]:
    b = 1
    out: Counter = Counter()
    for (t, _), m in arcs.items():
        b *= math.factorial(m)
        out[t] += m
    c = 1
    for m in out.values():
        c *= math.factorial(m)
    return b, c


class _Entry:
    __slots__ = ("idx", "value", "first", "delta", "occ", "key")

    def __init__(self, idx, value, k):
        self.idx = idx
        self.value = value
        self.first = idx[0]
        delta: Counter = Counter()
        delta[idx[0]] += k - 1
        for v in idx[1:]:
            delta[v] -= 1
        self.delta = tuple(sorted((v, c) for v, c in delta.items() if c))
        self.occ = tuple(sorted(Counter(idx).items()))
        self.key = self.delta


def _multisets(T: Tensor, d: int, balanced: bool) -> Iterator[list[int]]:
    """Nondecreasing index lists into the nonzero entries of ``T``.

    ``balanced``: keep only families whose arcs have equal in/out degree at
    every vertex (the only ones with closed walks). Otherwise keep every
    k-valent family.
    """
    k, n = T.order, T.dim
    entries = [_Entry(idx, val, k) for idx, val in T.nonzeros()]
    if not entries:
        return
    by_key: dict[tuple, list[int]] = {}
    for j, e in enumerate(entries):
        by_key.setdefault(e.key, []).append(j)
    delta = [0] * (n + 1)
    occ = [0] * (n + 1)
    chosen: list[int] = []

    def need_key():
        return tuple((v, -delta[v]) for v in range(1, n + 1) if delta[v])

    def kvalent_ok(remaining):
        deficit = sum((-occ[v]) % k for v in range(1, n + 1))
        return deficit <= k * remaining

    def add(e, sgn):
        for v, c in e.delta:
            delta[v] += sgn * c
        for v, c in e.occ:
            occ[v] += sgn * c

    def rec(start, remaining):
        if remaining == 0:
            if balanced:
                if not any(delta):
                    yield list(chosen)
            elif all(o % k == 0 for o in occ):
                yield list(chosen)
            return
        if balanced:
            if sum(abs(x) for x in delta) > 2 * (k - 1) * remaining:
                return
            if remaining == 1:
                for j in by_key.get(need_key(), ()):
                    if j >= start:
                        chosen.append(j)
                        yield list(chosen)
                        chosen.pop()
                return
        elif not kvalent_ok(remaining):
            return
        checked = 0  # vertices below this index have been confirmed done
        for j in range(start, len(entries)):
            e = entries[j]
            if balanced:
                # rows below e.first are complete; they can only lose out-balance
                while checked < e.first:
                    if delta[checked] < 0:
                        return
                    checked += 1
            add(e, 1)
            chosen.append(j)
            yield from rec(j, remaining - 1)
            chosen.pop()
            add(e, -1)

    yield from rec(0, d)


def _family_data(entries_idx, entries, walk_cache):
    idxs = [entries[j][0] for j in entries_idx]
    arcs = arc_multiset(idxs)
    b, c = _b_and_c(arcs)
    pi = 1
    for j in entries_idx:
        pi = pi * entries[j][1]
    key = tuple(sorted(arcs.items()))
    w = walk_cache.get(key)
    if w is None:
        w = count_closed_walks(arcs)
        walk_cache[key] = w
    return idxs, arcs, b, c, pi, w


def _orderings(F_sorted: list[tuple[int, ...]]) -> Iterator[tuple[tuple[int, ...], ...]]:
    """Distinct orderings of equal-first-index blocks (first indices stay sorted)."""
    blocks: list[list[tuple[int, ...]]] = []
    for idx in F_sorted:
        if blocks and blocks[-1][0][0] == idx[0]:
            blocks[-1].append(idx)
        else:
            blocks.append([idx])

    def perms(items):
        if not items:
            yield ()
            return
        for x in sorted(set(items)):
            rest = list(items)
            rest.remove(x)
            for tail in perms(rest):
                yield (x,) + tail

    def rec(i):
        if i == len(blocks):
            yield ()
            return
        for head in perms(blocks[i]):
            for tail in rec(i + 1):
                yield head + tail

    yield from rec(0)


def enumerate_trace_terms(T: Tensor, d: int, budget: TraceBudget = DEFAULT_BUDGET,
                          nonzero_walks_only: bool = False) -> Iterator[TraceTerm]:
    """Every k-valent ``F`` of length ``d`` with ``pi_F(T) != 0``.

    Only index tuples holding nonzero entries are visited. With
    ``nonzero_walks_only`` the families without closed walks are skipped.
    """
    budget.check(T, d)
    entries = list(T.nonzeros())
    cache: dict = {}
    for fam in _multisets(T, d, balanced=nonzero_walks_only):
        idxs, arcs, b, c, pi, w = _family_data(fam, entries, cache)
        arc_items = tuple(sorted(arcs.items()))
        for F in _orderings(idxs):
            yield TraceTerm(F, arc_items, b, c, pi, w)


def trace_d(T: Tensor, d: int, budget: TraceBudget = DEFAULT_BUDGET):
    """``Tr_d(T)``; exact when ``T`` is exact."""
    budget.check(T, d)
    k, n = T.order, T.dim
    entries = list(T.nonzeros())
    cache: dict = {}
    total = Fraction(0) if T.exact else 0j
    for fam in _multisets(T, d, balanced=True):
        idxs, arcs, b, c, pi, w = _family_data(fam, entries, cache)
        if not w:
            continue
        # number of distinct F sharing this multiset of index tuples
        count = 1
        for row, block in _group_counts(fam, entries).items():
            count *= math.factorial(sum(block.values()))
            for m in block.values():
                count //= math.factorial(m)
        total += count * Fraction(b, c) * pi * w if T.exact else count * (b / c) * pi * w
    return (k - 1) ** (n - 1) * total


def _group_counts(fam, entries) -> dict[int, Counter]:
    rows: dict[int, Counter] = {}
    for j in fam:
        rows.setdefault(entries[j][0][0], Counter())[j] += 1
    return rows


def laplacian_trace_formula(H: Hypergraph, t: int, signless: bool = False) -> int:
    """Closed form of ``Tr_t`` for the (signless) Laplacian tensor, ``1 <= t <= k``."""
    k, n = H.k, H.n
    if not 1 <= t <= k:
        raise ValueError(f"closed form only holds for 1 <= t <= k (got t={t}, k={k})")
    value = (k - 1) ** (n - 1) * degree_power_sum(H, t) if n else 0
    if t == k:
        sign = 1 if signless else (-1) ** k
        value += sign * k ** (k - 1) * Fraction(k - 1) ** (n - k) * H.m
    return Fraction(value)


def charpoly_coefficients(traces: Sequence) -> list:
    """Codegree coefficients ``p_1..p_m`` from ``Tr_1..Tr_m`` (Newton's identities).

    Solves ``t p_t + sum_{j<t} Tr_j p_{t-j} = -Tr_t`` by forward substitution.
    """
    p: list = []
    for t in range(1, len(traces) + 1):
        acc = -traces[t - 1]
        for j in range(1, t):
            acc -= traces[j - 1] * p[t - j - 1]
        p.append(acc / t if not isinstance(acc, int) else Fraction(acc, t))
    return p


def regular_coefficient_formula(n: int, k: int, d: int, t: int) -> tuple[Fraction, Fraction]:
    """``(p_t(L), p_t(Q))`` for a d-regular k-uniform hypergraph on n vertices."""
    if not 1 <= t <= k:
        raise ValueError(f"closed form only holds for 1 <= t <= k (got t={t}, k={k})")
    N = n * (k - 1) ** (n - 1)
    base = Fraction((-1) ** t * d ** t * math.comb(N, t))
    if t < k:
        return base, base
    edge_term = Fraction(k) ** (k - 3) * Fraction(k - 1) ** (n - k) * n * d
    return (-1) ** (k + 1) * edge_term + base, -edge_term + base


def charpoly_n2(T: Tensor) -> Polynomial:
    """``det(lambda I - T)`` for dimension 2 as the Sylvester resultant of the
    two binary forms ``((lambda I - T) x)_i``."""
    if T.dim != 2:
        raise ValueError("charpoly_n2 needs a dimension-2 tensor")
    if not T.exact:
        raise TypeError("charpoly_n2 works over exact rationals")
    k = T.order
    m = k - 1
    forms = []
    for i in (1, 2):
        coeffs = [Polynomial() for _ in range(m + 1)]
        for idx, val in T.nonzeros():
            if idx[0] == i:
                j = sum(1 for v in idx[1:] if v == 2)  # power of x2
                coeffs[j] = coeffs[j] - val
        lam_slot = 0 if i == 1 else m
        coeffs[lam_slot] = coeffs[lam_slot] + Polynomial([0, 1])
        forms.append(coeffs)
    size = 2 * m
    M = [[Polynomial() for _ in range(size)] for _ in range(size)]
    for r in range(m):
        for j in range(m + 1):
            M[r][r + j] = forms[0][j]
            M[m + r][r + j] = forms[1][j]
    return determinant(M)


def spectrum_n2(T: Tensor) -> list[complex]:
    return poly_roots(charpoly_n2(T))
