"""k-uniform hypergraphs: parsing, degrees, connectivity, power hypergraphs,
and the parity / half-sum labelings used to probe odd-bipartiteness."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from hyperspec import gf2


class HGFError(ValueError):
    """Malformed hypergraph text; ``line`` is 1-based when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


@dataclass(frozen=True)
class Hypergraph:
    k: int
    n: int
    edges: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("edge size k must be positive")
        if self.n < 0:
            raise ValueError("vertex count must be nonnegative")
        canon = []
        for e in self.edges:
            e = tuple(sorted(int(v) for v in e))
            if len(e) != self.k:
                raise ValueError(f"edge {e} does not have {self.k} vertices")
            if len(set(e)) != self.k:
                raise ValueError(f"edge {e} repeats a vertex")
            if e[0] < 1 or e[-1] > self.n:
                raise ValueError(f"edge {e} leaves the vertex range 1..{self.n}")
            canon.append(e)
        canon.sort()
        for a, b in zip(canon, canon[1:]):
            if a == b:
                raise ValueError(f"duplicate edge {a}")
        object.__setattr__(self, "edges", tuple(canon))

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    def __str__(self) -> str:
        return serialize_hypergraph(self).rstrip("\n")


@dataclass(frozen=True)
class Labeling:
    """Vertex -> residue map; ``values[i-1]`` is the label of vertex ``i``."""

    values: tuple[int, ...]
    kind: str  # "half-sum" or "odd-bipartition"
    k: int = field(default=2)

    def part(self) -> frozenset[int]:
        """V_1 for an odd bipartition (vertices labelled 1)."""
        return frozenset(i + 1 for i, v in enumerate(self.values) if v % 2)


def parse_hypergraph(text: str) -> Hypergraph:
    """Parse HGF text: header ``k n m`` then ``m`` edge lines; ``#`` lines skipped."""
    rows = []
    for lineno, raw in enumerate(text.replace("\r\n", "\n").split("\n"), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            rows.append((lineno, [int(tok) for tok in line.split()]))
        except ValueError:
            raise HGFError(f"non-integer token in {line!r}", lineno) from None
    if not rows:
        raise HGFError("empty input")
    lineno, header = rows[0]
    if len(header) != 3:
        raise HGFError("header must be 'k n m'", lineno)
    k, n, m = header
    if k < 1 or n < 0 or m < 0:
        raise HGFError("header values out of range", lineno)
    body = rows[1:]
    if len(body) != m:
        raise HGFError(f"expected {m} edge lines, found {len(body)}",
                       body[-1][0] if body else lineno)
    seen = set()
    edges = []
    for lineno, verts in body:
        if len(verts) != k:
            raise HGFError(f"edge has {len(verts)} vertices, expected {k}", lineno)
        if len(set(verts)) != k:
            raise HGFError("duplicate vertex within edge", lineno)
        if min(verts) < 1 or max(verts) > n:
            raise HGFError(f"vertex index out of range 1..{n}", lineno)
        e = tuple(sorted(verts))
        if e in seen:
            raise HGFError(f"duplicate edge {e}", lineno)
        seen.add(e)
        edges.append(e)
    return Hypergraph(k, n, tuple(edges))


def serialize_hypergraph(H: Hypergraph) -> str:
    lines = [f"{H.k} {H.n} {H.m}"]
    lines.extend(" ".join(map(str, e)) for e in H.edges)
    return "\n".join(lines) + "\n"


def degrees(H: Hypergraph) -> tuple[int, ...]:
    d = [0] * H.n
    for e in H.edges:
        for v in e:
            d[v - 1] += 1
    return tuple(d)


def degree_power_sum(H: Hypergraph, s: int) -> int:
    if s < 1:
        raise ValueError("s must be >= 1")
    return sum(di ** s for di in degrees(H))


def is_regular(H: Hypergraph) -> int | None:
    """Common degree if ``H`` is regular, else ``None``."""
    d = set(degrees(H))
    if len(d) == 1:
        return d.pop()
    return 0 if H.n == 0 else None


def components(H: Hypergraph) -> list[list[int]]:
    """Vertex classes of the vertex-edge incidence graph, each sorted."""
    parent = list(range(H.n + 1))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for e in H.edges:
        r = find(e[0])
        for v in e[1:]:
            parent[find(v)] = r
    groups: dict[int, list[int]] = {}
    for v in H.vertices:
        groups.setdefault(find(v), []).append(v)
    return sorted(groups.values())


def is_connected(H: Hypergraph) -> bool:
    return len(components(H)) <= 1


def induced_on(H: Hypergraph, verts: Sequence[int]) -> tuple[Hypergraph, dict[int, int]]:
    """Sub-hypergraph on ``verts`` (edges fully inside), renumbered in order."""
    mapping = {v: i for i, v in enumerate(sorted(verts), start=1)}
    edges = tuple(tuple(mapping[v] for v in e) for e in H.edges
                  if all(v in mapping for v in e))
    return Hypergraph(H.k, len(mapping), edges), mapping


def core_vertices(H: Hypergraph) -> frozenset[int]:
    return frozenset(i for i, di in enumerate(degrees(H), start=1) if di == 1)


def remove_edge_with_cores(H: Hypergraph, e: Iterable[int]) -> tuple[Hypergraph, dict[int, int]]:
    """Delete edge ``e`` and its core vertices.

    Returns the smaller hypergraph and the old->new map for surviving vertices.
    """
    e = tuple(sorted(e))
    if e not in H.edges:
        raise ValueError(f"{e} is not an edge")
    cores = core_vertices(H)
    dropped = {v for v in e if v in cores}
    keep = [v for v in H.vertices if v not in dropped]
    mapping = {v: i for i, v in enumerate(keep, start=1)}
    edges = tuple(tuple(mapping[v] for v in f) for f in H.edges if f != e)
    return Hypergraph(H.k, len(keep), edges), mapping


def power_hypergraph(G: Hypergraph, k: int) -> Hypergraph:
    """k-th power of a graph: pad each edge with k-2 fresh core vertices.

    New vertices are numbered n+1, n+2, ... following the (sorted) edge order.
    """
    if G.k != 2:
        raise ValueError("power hypergraph needs a 2-uniform input")
    if k < 3:
        raise ValueError("target edge size must be >= 3")
    nxt = G.n + 1
    edges = []
    for e in G.edges:
        pad = tuple(range(nxt, nxt + k - 2))
        nxt += k - 2
        edges.append(e + pad)
    return Hypergraph(k, nxt - 1, tuple(edges))


def power_core_map(G: Hypergraph, k: int) -> dict[tuple[int, int], tuple[int, ...]]:
    """Edge of ``G`` -> its added core vertices in ``power_hypergraph(G, k)``."""
    out = {}
    nxt = G.n + 1
    for e in G.edges:
        out[e] = tuple(range(nxt, nxt + k - 2))
        nxt += k - 2
    return out


def is_odd_bipartition(H: Hypergraph, V1: Iterable[int]) -> bool:
    V1 = set(V1)
    if not V1 or len(V1) >= H.n or not V1 <= set(H.vertices):
        return False
    return all(sum(v in V1 for v in e) % 2 == 1 for e in H.edges)


def find_odd_bipartition(H: Hypergraph) -> Labeling | None:
    """Proper nonempty V_1 meeting every edge oddly, via the GF(2) parity system."""
    if H.n < 2:
        return None
    rows = [(sum(1 << (v - 1) for v in e), 1) for e in H.edges]
    sol = gf2.solve(rows, H.n)
    if sol is None:
        return None
    x0, basis = sol
    full = (1 << H.n) - 1
    # at most two solutions (empty set, whole set) are improper
    for combo in ([], *([b] for b in basis), basis[:2]):
        x = x0
        for b in combo:
            x ^= b
        if x not in (0, full):
            vals = tuple((x >> i) & 1 for i in range(H.n))
            return Labeling(vals, "odd-bipartition", H.k)
    return None


def is_half_sum_labeling(H: Hypergraph, f: Sequence[int]) -> bool:
    k = H.k
    if k % 2 or len(f) != H.n:
        return False
    return all((sum(f[v - 1] for v in e) - k // 2) % k == 0 for e in H.edges)


def find_half_sum_labeling(H: Hypergraph) -> Labeling | None:
    """f: V -> Z_k with every edge sum congruent to k/2, or ``None``.

    The conditions form a linear system over Z_k, decided through the Smith
    form of the edge-vertex incidence matrix.
    """
    k = H.k
    if k % 2:
        return None
    vals = solve_mod(H, k // 2, k)
    return None if vals is None else Labeling(vals, "half-sum", k)


def solve_mod(H: Hypergraph, rhs: int, k: int) -> tuple[int, ...] | None:
    """Some ``f`` with ``sum_{v in e} f(v) = rhs (mod k)`` for every edge."""
    if not H.edges:
        return (0,) * H.n
    from sympy import Matrix, ZZ
    from sympy.matrices.normalforms import smith_normal_decomp

    A = Matrix(H.m, H.n, lambda i, j: int(j + 1 in H.edges[i]))
    D, S, T = smith_normal_decomp(A, domain=ZZ)   # D = S A T
    c = S * Matrix([rhs] * H.m)
    g = [0] * H.n
    for i in range(H.m):
        d = int(D[i, i]) if i < H.n else 0
        ci = int(c[i]) % k
        if d == 0:
            if ci:
                return None
            continue
        q = math.gcd(d, k)
        if ci % q:
            return None
        mod = k // q
        g[i] = (ci // q) * pow(d // q, -1, mod) % mod if mod > 1 else 0
    f = T * Matrix(g)
    return tuple(int(v) % k for v in f)


def bipartition_sign_vector(H: Hypergraph, V1: Iterable[int]) -> tuple[int, ...]:
    """+/-1 vector (-1 on V_1) annihilated by the signless Laplacian tensor."""
    V1 = set(V1)
    if H.k % 2:
        raise ValueError("sign witness needs even k")
    if not is_odd_bipartition(H, V1):
        raise ValueError(f"{sorted(V1)} is not an odd bipartition")
    return tuple(-1 if v in V1 else 1 for v in H.vertices)


# -- small named families used by tests and the CLI --------------------------

def graph(n: int, edges: Iterable[Sequence[int]]) -> Hypergraph:
    return Hypergraph(2, n, tuple(tuple(e) for e in edges))


def path(n: int) -> Hypergraph:
    return graph(n, [(i, i + 1) for i in range(1, n)])


def cycle(n: int) -> Hypergraph:
    return graph(n, [(i, i % n + 1) for i in range(1, n + 1)])


def star(n: int) -> Hypergraph:
    return graph(n, [(1, i) for i in range(2, n + 1)])


def complete_uniform(k: int, n: int) -> Hypergraph:
    return Hypergraph(k, n, tuple(itertools.combinations(range(1, n + 1), k)))
