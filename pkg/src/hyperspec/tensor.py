"""Dense order-k tensors over exact rationals or complex doubles.

Exact tensors hold :class:`fractions.Fraction` entries in an object array;
numeric tensors hold ``complex128``. Nothing converts between the two unless
asked to (:meth:`Tensor.numeric`).
"""

from __future__ import annotations

import cmath
import itertools
import math
from fractions import Fraction
from typing import Iterator, Sequence

import numpy as np

from hyperspec import kernels
from hyperspec.hypergraph import Hypergraph, components, degrees

_ZERO = Fraction(0)


def is_exact(value) -> bool:
    return isinstance(value, (int, Fraction, np.integer)) and not isinstance(value, bool)


def _as_exact(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, np.integer)):
        return Fraction(int(value))
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"{value!r} is not an exact rational")


class Tensor:
    """Order ``k`` tensor of dimension ``n``; ``data[i1-1, ..., ik-1]``."""

    __slots__ = ("data",)

    def __init__(self, data: np.ndarray):
        if data.ndim < 1 or len(set(data.shape)) != 1:
            raise ValueError(f"tensor must be hypercubic, got shape {data.shape}")
        if data.dtype != object and data.dtype != np.complex128:
            data = data.astype(np.complex128)
        data.setflags(write=False)
        self.data = data

    # construction -----------------------------------------------------------

    @classmethod
    def zeros(cls, k: int, n: int, exact: bool = True) -> "Tensor":
        if exact:
            arr = np.empty((n,) * k, dtype=object)
            arr.fill(_ZERO)
        else:
            arr = np.zeros((n,) * k, dtype=np.complex128)
        return cls(arr)

    @classmethod
    def from_entries(cls, k: int, n: int, entries, exact: bool = True) -> "Tensor":
        """Build from ``{(i1..ik): value}`` with 1-based indices."""
        arr = cls.zeros(k, n, exact).data.copy()
        for idx, val in dict(entries).items():
            if len(idx) != k or min(idx) < 1 or max(idx) > n:
                raise IndexError(f"index {idx} outside [{n}]^{k}")
            arr[tuple(i - 1 for i in idx)] = _as_exact(val) if exact else complex(val)
        return cls(arr)

    @classmethod
    def from_matrix(cls, rows: Sequence[Sequence]) -> "Tensor":
        n = len(rows)
        return cls.from_entries(2, n, {(i + 1, j + 1): v for i, r in enumerate(rows)
                                       for j, v in enumerate(r) if v})

    # properties -------------------------------------------------------------

    @property
    def order(self) -> int:
        return self.data.ndim

    @property
    def dim(self) -> int:
        return self.data.shape[0]

    @property
    def exact(self) -> bool:
        return self.data.dtype == object

    def __getitem__(self, idx: Sequence[int]):
        return self.data[tuple(i - 1 for i in idx)]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Tensor) or other.data.shape != self.data.shape:
            return NotImplemented
        return bool(np.all(self.data == other.data))

    __hash__ = None

    def __repr__(self) -> str:
        kind = "exact" if self.exact else "complex"
        return f"Tensor(order={self.order}, dim={self.dim}, {kind}, nnz={sum(1 for _ in self.nonzeros())})"

    def nonzeros(self) -> Iterator[tuple[tuple[int, ...], object]]:
        """Nonzero entries as ``(1-based index, value)`` in lexicographic order."""
        for idx in zip(*np.nonzero(self.data)):
            yield tuple(int(i) + 1 for i in idx), self.data[idx]

    def numeric(self) -> "Tensor":
        if not self.exact:
            return self
        return Tensor(np.vectorize(complex, otypes=[np.complex128])(self.data))

    def __add__(self, other: "Tensor") -> "Tensor":
        _check_same(self, other)
        return Tensor(self.data + other.data)

    def __sub__(self, other: "Tensor") -> "Tensor":
        _check_same(self, other)
        return Tensor(self.data - other.data)

    def __neg__(self) -> "Tensor":
        return Tensor(-self.data)

    def scale(self, c) -> "Tensor":
        if self.exact and not is_exact(c):
            raise TypeError("scaling an exact tensor by an inexact value; call numeric() first")
        return Tensor(self.data * (Fraction(c) if self.exact else c))

    def is_symmetric(self) -> bool:
        return all(np.array_equal(self.data, self.data.transpose(p))
                   for p in itertools.permutations(range(self.order)))

    def diagonal(self) -> list:
        return [self.data[(i,) * self.order] for i in range(self.dim)]

    def support_components(self) -> list[list[int]]:
        """Vertex classes linked by co-occurrence in a nonzero entry."""
        parent = list(range(self.dim + 1))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for idx, _ in self.nonzeros():
            r = find(idx[0])
            for v in idx[1:]:
                parent[find(v)] = r
        groups: dict[int, list[int]] = {}
        for v in range(1, self.dim + 1):
            groups.setdefault(find(v), []).append(v)
        return sorted(groups.values())

    def restrict(self, verts: Sequence[int]) -> "Tensor":
        sel = np.array(sorted(verts)) - 1
        return Tensor(self.data[np.ix_(*([sel] * self.order))].copy())

    def apply(self, x: Sequence) -> list | np.ndarray:
        return apply(self, x)


def _check_same(a: Tensor, b: Tensor):
    if a.data.shape != b.data.shape:
        raise ValueError("tensor shapes differ")
    if a.exact != b.exact:
        raise TypeError("mixing exact and complex tensors; convert explicitly")


def unit_tensor(k: int, n: int) -> Tensor:
    if k < 2 or n < 1:
        raise ValueError("unit tensor needs k >= 2 and n >= 1")
    return Tensor.from_entries(k, n, {(i,) * k: 1 for i in range(1, n + 1)})


def diagonal_tensor(k: int, diag: Sequence) -> Tensor:
    n = len(diag)
    return Tensor.from_entries(k, n, {(i + 1,) * k: v for i, v in enumerate(diag) if v})


def adjacency_tensor(H: Hypergraph) -> Tensor:
    w = Fraction(1, math.factorial(H.k - 1))
    entries = {}
    for e in H.edges:
        for p in itertools.permutations(e):
            entries[p] = w
    return Tensor.from_entries(H.k, H.n, entries)


def degree_tensor(H: Hypergraph) -> Tensor:
    return diagonal_tensor(H.k, degrees(H))


def laplacian_tensor(H: Hypergraph) -> Tensor:
    return degree_tensor(H) - adjacency_tensor(H)


def signless_laplacian_tensor(H: Hypergraph) -> Tensor:
    return degree_tensor(H) + adjacency_tensor(H)


TENSOR_KINDS = ("adj", "lap", "slap")


def hypergraph_tensor(H: Hypergraph, kind: str) -> Tensor:
    builders = {"adj": adjacency_tensor, "lap": laplacian_tensor,
                "slap": signless_laplacian_tensor}
    if kind not in builders:
        raise ValueError(f"unknown tensor kind {kind!r}")
    return builders[kind](H)


def _vector(x, exact: bool):
    if exact:
        return np.array([_as_exact(v) for v in x], dtype=object)
    return np.asarray(x, dtype=np.complex128)


def apply(T: Tensor, x: Sequence) -> list | np.ndarray:
    """``(T x)_i = sum t[i, i2..ik] x_i2 ... x_ik``.

    Exact tensor with exact ``x`` gives a list of Fractions; any inexact input
    (or a complex tensor) gives a complex ndarray.
    """
    if len(x) != T.dim:
        raise ValueError(f"vector length {len(x)} != tensor dimension {T.dim}")
    exact = T.exact and all(is_exact(v) for v in x)
    data = T.data if exact else T.numeric().data
    v = _vector(x, exact)
    out = data
    for _ in range(T.order - 1):
        out = np.dot(out, v)
    return list(out) if exact else np.asarray(out, dtype=np.complex128)


def power_vector(x: Sequence, p: int):
    return [v ** p for v in x]


def shao_product(A: Tensor, B: Tensor) -> Tensor:
    """Shao's product: order ``(m-1)(k-1)+1`` for orders ``m`` and ``k``."""
    if A.dim != B.dim:
        raise ValueError("dimension mismatch")
    if A.order < 2:
        raise ValueError("left factor needs order >= 2")
    if A.exact != B.exact:
        raise TypeError("mixing exact and complex tensors; convert explicitly")
    m, k = A.order, B.order
    out = A.data
    # contract trailing axes one at a time; each leaves k-1 free axes behind
    for j in range(m - 1):
        pos = 1 + j * (k - 1)
        out = np.tensordot(out, B.data, axes=([pos], [0]))
        # move B's free axes into the slot just consumed
        tail = out.ndim - (k - 1)
        order = list(range(pos)) + list(range(tail, out.ndim)) + list(range(pos, tail))
        out = out.transpose(order)
    return Tensor(np.ascontiguousarray(out))


def vector_tensor(x: Sequence, exact: bool = True) -> Tensor:
    return Tensor(_vector(x, exact))


def matrix_sandwich(P, T: Tensor, Q) -> Tensor:
    """``(P T Q)_{i1..ik} = sum t[j1..jk] p[i1,j1] q[j2,i2] ... q[jk,ik]``."""
    P = np.asarray(P, dtype=object if T.exact else np.complex128)
    Q = np.asarray(Q, dtype=object if T.exact else np.complex128)
    n = T.dim
    if P.shape != (n, n) or Q.shape != (n, n):
        raise ValueError("sandwich matrices must be n x n")
    out = np.tensordot(P, T.data, axes=([1], [0]))
    for ax in range(1, T.order):
        out = np.tensordot(out, Q, axes=([ax], [0]))
        out = np.moveaxis(out, -1, ax)
    return Tensor(np.ascontiguousarray(out))


def check_phase_similarity(T: Tensor, U: Sequence[complex], theta: float,
                           tol: float = 1e-12) -> tuple[bool, float]:
    """Test ``T == exp(-i theta) U^{-(k-1)} T U`` entrywise; returns (ok, max dev).

    ``U`` is given by its diagonal.
    """
    u = np.asarray(U, dtype=np.complex128)
    if u.shape != (T.dim,):
        raise ValueError("U must have one diagonal entry per dimension")
    if np.any(np.abs(np.abs(u) - 1) > 1e-12):
        raise ValueError("U must have unit-modulus diagonal entries")
    k = T.order
    Tn = T.numeric()
    S = matrix_sandwich(np.diag(u ** (-(k - 1))), Tn, np.diag(u))
    dev = float(np.max(np.abs(Tn.data - cmath.exp(-1j * theta) * S.data)))
    return dev <= tol, dev


class HypergraphOperator:
    """Edge-list form of A_H, L_H or Q_H for sizes where n^k is out of reach.

    Carries the same ``apply`` contract as :class:`Tensor` without
    materializing entries.
    """

    def __init__(self, H: Hypergraph, kind: str = "adj"):
        if kind not in TENSOR_KINDS:
            raise ValueError(f"unknown tensor kind {kind!r}")
        self.H = H
        self.kind = kind
        self.edges = np.array(H.edges, dtype=np.int64).reshape(-1, H.k) - 1
        self.deg = np.array(degrees(H), dtype=np.float64)

    exact = True  # rational entries; a product is exact iff x is

    @property
    def order(self) -> int:
        return self.H.k

    @property
    def dim(self) -> int:
        return self.H.n

    def diagonal(self) -> list:
        if self.kind == "adj":
            return [0] * self.H.n
        return list(degrees(self.H))

    def support_components(self) -> list[list[int]]:
        return components(self.H)

    def restrict(self, verts: Sequence[int]) -> "HypergraphOperator":
        from hyperspec.hypergraph import induced_on
        sub, _ = induced_on(self.H, verts)
        return HypergraphOperator(sub, self.kind)

    def apply(self, x: Sequence):
        if len(x) != self.H.n:
            raise ValueError(f"vector length {len(x)} != tensor dimension {self.H.n}")
        k = self.H.k
        if all(is_exact(v) for v in x):
            xs = [Fraction(v) for v in x]
            out = [Fraction(0)] * self.H.n
            for e in self.H.edges:
                for pos, i in enumerate(e):
                    prod = Fraction(1)
                    for q, j in enumerate(e):
                        if q != pos:
                            prod *= xs[j - 1]
                    out[i - 1] += prod
            if self.kind != "adj":
                sign = 1 if self.kind == "slap" else -1
                d = degrees(self.H)
                out = [d[i] * xs[i] ** (k - 1) + sign * out[i] for i in range(self.H.n)]
            return out
        xv = np.asarray(x, dtype=np.complex128)
        out = kernels.edge_apply(self.edges, xv, self.H.n)
        if self.kind == "adj":
            return out
        sign = 1.0 if self.kind == "slap" else -1.0
        return self.deg * xv ** (k - 1) + sign * out

    def tensor(self) -> Tensor:
        return hypergraph_tensor(self.H, self.kind)


# -- TNS text format ---------------------------------------------------------

class TNSError(ValueError):
    pass


def parse_tensor(text: str) -> Tensor:
    """TNS: header ``k n``, then ``i1 .. ik  num/den`` or ``i1 .. ik  re im``."""
    lines = [(no, ln.strip()) for no, ln in enumerate(text.replace("\r\n", "\n").split("\n"), 1)]
    lines = [(no, ln) for no, ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise TNSError("empty tensor file")
    no, head = lines[0]
    try:
        k, n = (int(t) for t in head.split())
    except ValueError:
        raise TNSError(f"line {no}: header must be 'k n'") from None
    entries_exact, entries_cplx = {}, {}
    for no, ln in lines[1:]:
        toks = ln.split()
        try:
            idx = tuple(int(t) for t in toks[:k])
        except ValueError:
            raise TNSError(f"line {no}: bad index") from None
        rest = toks[k:]
        if len(idx) != k or min(idx) < 1 or max(idx) > n:
            raise TNSError(f"line {no}: index outside [{n}]^{k}")
        if idx in entries_exact or idx in entries_cplx:
            raise TNSError(f"line {no}: repeated index {idx}")
        try:
            if len(rest) == 1:
                entries_exact[idx] = Fraction(rest[0])
            elif len(rest) == 2:
                entries_cplx[idx] = complex(float(rest[0]), float(rest[1]))
            else:
                raise ValueError
        except (ValueError, ZeroDivisionError):
            raise TNSError(f"line {no}: value must be 'num/den' or 're im'") from None
    if entries_cplx:
        merged = {i: complex(v) for i, v in entries_exact.items()}
        merged.update(entries_cplx)
        return Tensor.from_entries(k, n, merged, exact=False)
    return Tensor.from_entries(k, n, entries_exact)


def format_tensor(T: Tensor) -> str:
    lines = [f"{T.order} {T.dim}"]
    for idx, v in T.nonzeros():
        ids = " ".join(map(str, idx))
        if T.exact:
            lines.append(f"{ids}  {v}")
        else:
            lines.append(f"{ids}  {float(v.real)!r} {float(v.imag)!r}")
    return "\n".join(lines) + "\n"
