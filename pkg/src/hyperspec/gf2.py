"""Linear systems over GF(2) with rows packed into Python ints."""

from __future__ import annotations


def solve(rows: list[tuple[int, int]], n_cols: int) -> tuple[int, list[int]] | None:
    """Solve ``a . x = b`` for every ``(a, b)`` in ``rows``.

    Bit ``j`` of ``a`` is the coefficient of ``x_j``. Returns a particular
    solution (free variables zero) and a nullspace basis, or ``None`` when the
    system is inconsistent.
    """
    pivots: list[tuple[int, int, int]] = []  # (column, row bits, rhs)
    for a, b in rows:
        for col, pa, pb in pivots:
            if (a >> col) & 1:
                a ^= pa
                b ^= pb
        if a == 0:
            if b:
                return None
            continue
        col = (a & -a).bit_length() - 1
        # keep the pivot table fully reduced
        reduced = []
        for c2, pa, pb in pivots:
            if (pa >> col) & 1:
                pa ^= a
                pb ^= b
            reduced.append((c2, pa, pb))
        pivots = reduced + [(col, a, b)]
    x = 0
    for col, _, pb in pivots:
        if pb:
            x |= 1 << col
    pivot_cols = {col for col, _, _ in pivots}
    basis = []
    for free in range(n_cols):
        if free in pivot_cols:
            continue
        z = 1 << free
        for col, pa, _ in pivots:
            if (pa >> free) & 1:
                z |= 1 << col
        basis.append(z)
    return x, basis


def rank(rows: list[int]) -> int:
    sol_rows = [(r, 0) for r in rows]
    width = max((r.bit_length() for r in rows), default=0)
    _, basis = solve(sol_rows, width)
    return width - len(basis)
