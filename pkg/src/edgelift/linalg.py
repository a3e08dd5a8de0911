"""Exact linear-algebra helpers.

Two solvers back the rest of the package: row reduction over a coefficient
field with a fixed, deterministic pivoting order (columns left to right), and
an integer solver for A x = b based on column Hermite reduction with a
unimodular transform, which also reports a kernel basis.
"""

from __future__ import annotations


def xgcd(a, b):
    """(g, x, y) with a*x + b*y = g = gcd(a, b), g >= 0."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def solve_field(ring, rows, rhs):
    """Solve ``rows . x = rhs`` over a field ring.

    Pivot columns are taken left to right, pivot rows top-down (first nonzero
    entry).  Free variables are set to zero.  Returns the solution list or
    None when the system is inconsistent.
    """
    m = len(rows)
    n = len(rows[0]) if m else 0
    a = [list(r) for r in rows]
    b = list(rhs)
    pivots = []
    r = 0
    for col in range(n):
        pivot_row = next((i for i in range(r, m) if not ring.is_zero(a[i][col])), None)
        if pivot_row is None:
            continue
        a[r], a[pivot_row] = a[pivot_row], a[r]
        b[r], b[pivot_row] = b[pivot_row], b[r]
        inv = ring.invert(a[r][col])
        a[r] = [ring.mul(v, inv) for v in a[r]]
        b[r] = ring.mul(b[r], inv)
        for i in range(m):
            if i != r and not ring.is_zero(a[i][col]):
                f = a[i][col]
                a[i] = [ring.sub(v, ring.mul(f, w)) for v, w in zip(a[i], a[r])]
                b[i] = ring.sub(b[i], ring.mul(f, b[r]))
        pivots.append(col)
        r += 1
    for i in range(r, m):
        if not ring.is_zero(b[i]):
            return None
    x = [ring.zero()] * n
    for i, col in enumerate(pivots):
        x[col] = b[i]
    return x


def solve_integer(rows, rhs):
    """Solve ``rows . x = rhs`` over the integers.

    Returns (particular_solution, kernel_basis) or None when no integral
    solution exists.  Column reduction with a tracked unimodular transform:
    column operations preserve A_orig . U = A_current, so a solution y of the
    reduced system maps back as U . y.
    """
    m = len(rows)
    n = len(rows[0]) if m else 0
    a = [list(r) for r in rows]
    u = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def combine(j1, j2, c11, c12, c21, c22):
        for mat in (a, u):
            for row in mat:
                v1, v2 = row[j1], row[j2]
                row[j1] = c11 * v1 + c12 * v2
                row[j2] = c21 * v1 + c22 * v2

    def swap(j1, j2):
        for mat in (a, u):
            for row in mat:
                row[j1], row[j2] = row[j2], row[j1]

    col = 0
    pivot_of_row = [None] * m
    for i in range(m):
        if col >= n:
            break
        while True:
            nz = [j for j in range(col, n) if a[i][j] != 0]
            if len(nz) <= 1:
                break
            j1, j2 = nz[0], nz[1]
            g, x, y = xgcd(a[i][j1], a[i][j2])
            # det of the 2x2 block is -(x*q2 + y*q1)* ... chosen unimodular:
            q1, q2 = a[i][j1] // g, a[i][j2] // g
            combine(j1, j2, x, y, -q2, q1)
        nz = [j for j in range(col, n) if a[i][j] != 0]
        if nz:
            if nz[0] != col:
                swap(nz[0], col)
            pivot_of_row[i] = col
            col += 1

    rank = col
    x_reduced = [0] * n
    for i in range(m):
        val = rhs[i] - sum(a[i][j] * x_reduced[j] for j in range(n) if a[i][j] and x_reduced[j])
        piv = pivot_of_row[i]
        if piv is None:
            if val != 0:
                return None
            continue
        if val % a[i][piv] != 0:
            return None
        x_reduced[piv] = val // a[i][piv]
    particular = [sum(u[i][j] * x_reduced[j] for j in range(n)) for i in range(n)]
    kernel = [tuple(u[i][j] for i in range(n)) for j in range(rank, n)]
    return particular, kernel
