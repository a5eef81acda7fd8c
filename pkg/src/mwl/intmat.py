"""Exact integer matrix kernels: Smith and Hermite forms, lattice solving.

Everything here works on plain lists of Python ints, so all values stay
exact at any magnitude.  Matrices are row-major and lattices are spanned
by rows; a "transform" is always a unimodular matrix acting on the left
or right.
"""

from __future__ import annotations


def identity(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def matmul(a, b) -> list[list[int]]:
    if a and b and len(a[0]) != len(b):
        raise ValueError("shape mismatch in matmul")
    cols = len(b[0]) if b else 0
    return [[sum(row[k] * b[k][j] for k in range(len(row))) for j in range(cols)]
            for row in a]


def mat_copy(m) -> list[list[int]]:
    return [list(row) for row in m]


def _swap_rows(m, i, j):
    m[i], m[j] = m[j], m[i]


def _swap_cols(m, i, j):
    for row in m:
        row[i], row[j] = row[j], row[i]


def _add_row(m, dst, src, q):
    # row dst += q * row src
    row_s = m[src]
    row_d = m[dst]
    for k in range(len(row_d)):
        row_d[k] += q * row_s[k]


def _add_col(m, dst, src, q):
    for row in m:
        row[dst] += q * row[src]


def smith_normal_form(m) -> tuple[list[list[int]], list[list[int]], list[list[int]]]:
    """Return (s, u, v) with s = u @ m @ v.

    s is diagonal with non-negative entries forming a divisibility chain
    (each entry divides the next); u and v are unimodular.  Empty matrices
    come back unchanged with identity transforms.
    """
    rows = len(m)
    cols = len(m[0]) if rows else 0
    a = mat_copy(m)
    u = identity(rows)
    v = identity(cols)

    t = 0
    while t < min(rows, cols):
        # Pivot: entry of smallest absolute value in the trailing block.
        pi = pj = -1
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                e = a[i][j]
                if e != 0 and (best is None or abs(e) < best):
                    best, pi, pj = abs(e), i, j
        if best is None:
            break
        if pi != t:
            _swap_rows(a, t, pi)
            _swap_rows(u, t, pi)
        if pj != t:
            _swap_cols(a, t, pj)
            _swap_cols(v, t, pj)

        while True:
            # Clear the pivot column with row operations.
            dirty = False
            for i in range(t + 1, rows):
                if a[i][t] == 0:
                    continue
                q = a[i][t] // a[t][t]
                _add_row(a, i, t, -q)
                _add_row(u, i, t, -q)
                if a[i][t] != 0:
                    # Remainder is a smaller pivot; promote it.
                    _swap_rows(a, t, i)
                    _swap_rows(u, t, i)
                    dirty = True
            if dirty:
                continue
            # Clear the pivot row with column operations.
            for j in range(t + 1, cols):
                if a[t][j] == 0:
                    continue
                q = a[t][j] // a[t][t]
                _add_col(a, j, t, -q)
                _add_col(v, j, t, -q)
                if a[t][j] != 0:
                    _swap_cols(a, t, j)
                    _swap_cols(v, t, j)
                    dirty = True
            if dirty:
                continue
            # Pivot must divide the whole trailing block for the chain.
            p = a[t][t]
            stray = None
            for i in range(t + 1, rows):
                for j in range(t + 1, cols):
                    if a[i][j] % p != 0:
                        stray = i
                        break
                if stray is not None:
                    break
            if stray is None:
                break
            _add_row(a, t, stray, 1)
            _add_row(u, t, stray, 1)
        t += 1

    for i in range(min(rows, cols)):
        if a[i][i] < 0:
            _add_row(a, i, i, -2)  # negate row: r - 2r
            _add_row(u, i, i, -2)
    return a, u, v


def hermite_form(m) -> tuple[list[list[int]], list[list[int]]]:
    """Row echelon form over the integers with transform: h = t @ m.

    Pivots are positive, entries above each pivot are reduced into
    [0, pivot), and t is unimodular.  Zero rows sink to the bottom.
    """
    rows = len(m)
    cols = len(m[0]) if rows else 0
    a = mat_copy(m)
    t = identity(rows)
    r = 0
    for j in range(cols):
        # Euclid on column j among rows >= r.
        while True:
            nz = [i for i in range(r, rows) if a[i][j] != 0]
            if not nz:
                break
            pi = min(nz, key=lambda i: abs(a[i][j]))
            if pi != r:
                _swap_rows(a, r, pi)
                _swap_rows(t, r, pi)
            done = True
            for i in range(r + 1, rows):
                if a[i][j] == 0:
                    continue
                q = a[i][j] // a[r][j]
                _add_row(a, i, r, -q)
                _add_row(t, i, r, -q)
                if a[i][j] != 0:
                    done = False
            if done:
                break
        if r < rows and a[r][j] != 0:
            if a[r][j] < 0:
                _add_row(a, r, r, -2)
                _add_row(t, r, r, -2)
            for i in range(r):
                q = a[i][j] // a[r][j]
                if q:
                    _add_row(a, i, r, -q)
                    _add_row(t, i, r, -q)
            r += 1
            if r == rows:
                break
    return a, t


def row_basis(rows) -> list[list[int]]:
    """Basis of the lattice spanned by the given rows."""
    h, _ = hermite_form(rows)
    return [row for row in h if any(row)]


def solve_left(basis, target) -> list[int] | None:
    """Solve x @ basis = target over the integers, or None.

    basis rows need not be echelonized; membership in their row span is
    decided exactly.
    """
    if not basis:
        return [] if not any(target) else None
    h, t = hermite_form(basis)
    v = list(target)
    y = [0] * len(h)
    for i, row in enumerate(h):
        piv = next((j for j, e in enumerate(row) if e != 0), None)
        if piv is None:
            break
        q, rem = divmod(v[piv], row[piv])
        if rem:
            return None
        y[i] = q
        for k in range(len(v)):
            v[k] -= q * row[k]
    if any(v):
        return None
    return [sum(y[i] * t[i][k] for i in range(len(h))) for k in range(len(t))]


def left_kernel(m) -> list[list[int]]:
    """Basis rows of the lattice {x : x @ m = 0}."""
    h, t = hermite_form(m)
    return [t[i] for i in range(len(h)) if not any(h[i])]


def invert_unimodular(m) -> list[list[int]]:
    """Exact inverse of a unimodular integer matrix."""
    n = len(m)
    h, t = hermite_form(m)
    if h != identity(n):
        raise ValueError("matrix is not unimodular")
    return t


def lattice_intersection(rows_a, rows_b, dim: int) -> list[list[int]]:
    """Basis of the intersection of the lattices spanned by rows_a, rows_b."""
    pa = row_basis(rows_a) if rows_a else []
    pb = row_basis(rows_b) if rows_b else []
    if not pa or not pb:
        return []
    stacked = pa + pb
    inter = []
    for w in left_kernel(stacked):
        ua = w[: len(pa)]
        vec = [sum(ua[i] * pa[i][k] for i in range(len(pa))) for k in range(dim)]
        if any(vec):
            inter.append(vec)
    return row_basis(inter)
