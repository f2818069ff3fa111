"""Univariate polynomials over exact rationals or complex doubles, plus the
root finder used throughout the spectra code."""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from typing import Iterable, Sequence


def _is_exact(c) -> bool:
    return isinstance(c, (int, Fraction)) and not isinstance(c, bool)


class Polynomial:
    """``coeffs[i]`` multiplies ``x**i``; trailing zeros are stripped."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [Fraction(c) if isinstance(c, int) else c for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def from_descending(cls, coeffs: Sequence) -> "Polynomial":
        return cls(list(coeffs)[::-1])

    @classmethod
    def from_roots(cls, roots: Iterable) -> "Polynomial":
        p = cls([1])
        for r in roots:
            p = p * cls([-r, 1])
        return p

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    @property
    def exact(self) -> bool:
        return all(_is_exact(c) for c in self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def lead(self):
        return self.coeffs[-1]

    def descending(self) -> list:
        return list(self.coeffs[::-1])

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            other = Polynomial([other])
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"Polynomial({list(self.coeffs)})"

    def __add__(self, other) -> "Polynomial":
        other = other if isinstance(other, Polynomial) else Polynomial([other])
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return Polynomial([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)
                           for i in range(n)])

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial([-c for c in self.coeffs])

    def __sub__(self, other) -> "Polynomial":
        other = other if isinstance(other, Polynomial) else Polynomial([other])
        return self + (-other)

    def __rsub__(self, other) -> "Polynomial":
        return Polynomial([other]) - self

    def __mul__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            return Polynomial([c * other for c in self.coeffs])
        if self.is_zero() or other.is_zero():
            return Polynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "Polynomial":
        out = Polynomial([1])
        for _ in range(e):
            out = out * self
        return out

    def divmod(self, other: "Polynomial") -> tuple["Polynomial", "Polynomial"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        lead = other.lead()
        quot = [0] * max(len(rem) - dq, 1)
        for i in range(len(rem) - 1, dq - 1, -1):
            c = rem[i] / lead
            quot[i - dq] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[i - dq + j] -= c * b
        return Polynomial(quot), Polynomial(rem[:dq] if dq > 0 else [])

    def __floordiv__(self, other: "Polynomial") -> "Polynomial":
        return self.divmod(other)[0]

    def __mod__(self, other: "Polynomial") -> "Polynomial":
        return self.divmod(other)[1]

    def derivative(self) -> "Polynomial":
        return Polynomial([i * c for i, c in enumerate(self.coeffs)][1:])

    def monic(self) -> "Polynomial":
        lead = self.lead()
        return Polynomial([c / lead for c in self.coeffs])

    def norm(self) -> float:
        return math.sqrt(sum(abs(complex(c)) ** 2 for c in self.coeffs))


def gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic gcd; exact inputs only."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic() if not a.is_zero() else a


def squarefree_decomposition(p: Polynomial) -> list[tuple[Polynomial, int]]:
    """Yun's algorithm: ``p = lead * prod(f_i ** i)`` with squarefree ``f_i``."""
    if not p.exact:
        raise TypeError("squarefree decomposition needs exact coefficients")
    out = []
    a = gcd(p, p.derivative())
    b = p // a
    c = p.derivative() // a
    i = 1
    while b.degree > 0:
        d = c - b.derivative()
        g = gcd(b, d)
        if g.degree > 0:
            out.append((g, i))
        b = b // g
        c = d // g
        i += 1
    return out


class RootFindingError(ArithmeticError):
    pass


def _durand_kerner(coeffs: Sequence[complex], tol: float, max_iter: int) -> list[complex]:
    """All roots of a monic polynomial given by ascending ``coeffs``."""
    deg = len(coeffs) - 1
    if deg == 1:
        return [-coeffs[0]]
    # Cauchy bound sets the seeding circle radius
    radius = 1.0 + max(abs(c) for c in coeffs[:-1])
    z = [radius * cmath.exp(1j * (2 * math.pi * j / deg + 0.4)) for j in range(deg)]

    def ev(x):
        acc = 0j
        for c in reversed(coeffs):
            acc = acc * x + c
        return acc

    for _ in range(max_iter):
        shift = 0.0
        for j in range(deg):
            denom = 1 + 0j
            for i in range(deg):
                if i != j:
                    denom *= z[j] - z[i]
            if denom == 0:
                denom = 1e-300
            step = ev(z[j]) / denom
            z[j] -= step
            shift = max(shift, abs(step))
        if shift <= tol * max(1.0, max(abs(v) for v in z)):
            return z
    # clustered roots stall the correction size; the caller's residual check decides
    return z


def _polish(p: Polynomial, dp: Polynomial, r: complex, steps: int = 3) -> complex:
    for _ in range(steps):
        d = complex(dp(r))
        if d == 0:
            break
        step = complex(p(r)) / d
        if not math.isfinite(abs(step)):
            break
        r -= step
        if abs(step) < 1e-17 * max(1.0, abs(r)):
            break
    return r


def poly_roots(p: Polynomial, tol: float = 1e-14, max_iter: int = 2000) -> list[complex]:
    """All complex roots with multiplicity.

    Exact polynomials are split into squarefree factors first, so repeated
    roots come back as exact repeats of one accurately computed value.
    """
    if p.is_zero():
        raise ValueError("the zero polynomial has no well-defined roots")
    if p.degree < 1:
        raise ValueError("constant polynomial has no roots")
    if p.exact:
        parts = squarefree_decomposition(p)
    else:
        parts = [(p, 1)]
    roots: list[complex] = []
    for f, mult in parts:
        fm = f.monic()
        coeffs = [complex(c) for c in fm.coeffs]
        found = _durand_kerner(coeffs, tol, max_iter)
        dfm = fm.derivative()
        found = [_polish(Polynomial(coeffs), Polynomial([complex(c) for c in dfm.coeffs]), r)
                 for r in found]
        for r in found:
            roots.extend([r] * mult)
    pn = Polynomial([complex(c) for c in p.coeffs])
    scale = pn.norm()
    for r in roots:
        # |p(r)| relative to the coefficient norm, weighted by |r|^deg for large roots
        bound = 1e-10 * scale * max(1.0, abs(r)) ** p.degree
        if abs(pn(r)) > bound:
            raise RootFindingError(f"root {r} fails the residual check |p(r)|={abs(pn(r)):.3e}")
    return sorted(roots, key=lambda c: (round(c.real, 9), round(c.imag, 9)))


def power_sums(roots: Iterable[complex], upto: int) -> list[complex]:
    rs = list(roots)
    return [sum(r ** t for r in rs) for t in range(1, upto + 1)]


def determinant(M: Sequence[Sequence[Polynomial]]) -> Polynomial:
    """Fraction-free (Bareiss) elimination over Q[x]."""
    n = len(M)
    if n == 0:
        return Polynomial([1])
    A = [[e if isinstance(e, Polynomial) else Polynomial([e]) for e in row] for row in M]
    sign = 1
    prev = Polynomial([1])
    for k in range(n - 1):
        if A[k][k].is_zero():
            swap = next((r for r in range(k + 1, n) if not A[r][k].is_zero()), None)
            if swap is None:
                return Polynomial()
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = A[k][k] * A[i][j] - A[i][k] * A[k][j]
                q, r = num.divmod(prev)
                if not r.is_zero():
                    raise ArithmeticError("Bareiss step left a remainder")
                A[i][j] = q
            A[i][k] = Polynomial()
        prev = A[k][k]
    det = A[n - 1][n - 1]
    return det if sign == 1 else -det
