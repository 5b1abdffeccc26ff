"""Integer linear systems modulo N via Smith normal form.

Solves A x = b (mod N) exactly for integer A, b and arbitrary modulus
N >= 1.  Naive Gaussian elimination over Z/N breaks on zero divisors
when N is not prime; diagonalizing the lifted integer matrix first
sidesteps that entirely.
"""

from __future__ import annotations

from math import gcd

__all__ = ["solve_modular_linear"]


def _apply_row_ops(ops, b: list[int]) -> list[int]:
    b = list(b)
    for op in ops:
        if op[0] == "swap":
            _, i, j = op
            b[i], b[j] = b[j], b[i]
        else:
            _, i, j, q = op
            b[i] -= q * b[j]
    return b


def _diagonalize(A: list[list[int]]):
    """In-place diagonalization; returns (diag, row_ops, V)."""
    m = len(A)
    n = len(A[0]) if m else 0
    V = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    row_ops = []

    def swap_rows(i, j):
        if i != j:
            A[i], A[j] = A[j], A[i]
            row_ops.append(("swap", i, j))

    def add_row(i, j, q):
        if q:
            Ai, Aj = A[i], A[j]
            for c in range(n):
                Ai[c] -= q * Aj[c]
            row_ops.append(("add", i, j, q))

    def swap_cols(i, j):
        if i != j:
            for r in range(m):
                A[r][i], A[r][j] = A[r][j], A[r][i]
            for r in range(n):
                V[r][i], V[r][j] = V[r][j], V[r][i]

    def add_col(i, j, q):
        # column_i -= q * column_j
        if q:
            for r in range(m):
                A[r][i] -= q * A[r][j]
            for r in range(n):
                V[r][i] -= q * V[r][j]

    t = 0
    while t < m and t < n:
        # locate a pivot of minimal magnitude
        piv = None
        best = None
        for i in range(t, m):
            Ai = A[i]
            for j in range(t, n):
                v = Ai[j]
                if v:
                    a = abs(v)
                    if best is None or a < best:
                        best = a
                        piv = (i, j)
                        if a == 1:
                            break
            if best == 1:
                break
        if piv is None:
            break
        swap_rows(t, piv[0])
        swap_cols(t, piv[1])
        while True:
            # clear column t
            dirty = False
            for i in range(t + 1, m):
                if A[i][t]:
                    q = A[i][t] // A[t][t]
                    add_row(i, t, q)
                    if A[i][t]:
                        swap_rows(t, i)
                        dirty = True
            # clear row t
            for j in range(t + 1, n):
                if A[t][j]:
                    q = A[t][j] // A[t][t]
                    add_col(j, t, q)
                    if A[t][j]:
                        swap_cols(t, j)
                        dirty = True
            if not dirty:
                break
        t += 1
    diag = [A[i][i] for i in range(min(m, n))]
    return diag, row_ops, V

# Note: V rows were swapped/combined so that original_x = V @ y; the
# column ops above maintain A_new = A_old @ V column-for-column.


def solve_modular_linear(A, b, N: int):
    """Solve A x = b (mod N); returns a solution list or None.

    A is any m x n integer matrix (sequence of rows), b a length-m
    sequence.  N >= 1.  A solution is returned reduced mod N.
    """
    if N < 1:
        raise ValueError(f"modulus must be >= 1, got {N}")
    rows = [list(int(v) for v in row) for row in A]
    b = [int(v) for v in b]
    m = len(rows)
    n = len(rows[0]) if m else 0
    if any(len(r) != n for r in rows):
        raise ValueError("ragged matrix")
    if len(b) != m:
        raise ValueError("right-hand side length mismatch")
    if N == 1 or n == 0:
        if n == 0 and N > 1 and any(v % N for v in b):
            return None
        return [0] * n
    if m == 0:
        return [0] * n

    diag, row_ops, V = _diagonalize(rows)
    bb = _apply_row_ops(row_ops, b)
    y = [0] * n
    for i in range(m):
        r = bb[i] % N
        d = diag[i] if i < len(diag) else 0
        if d == 0:
            if r != 0:
                return None
            continue
        d = d % N
        g = gcd(d, N)
        if r % g:
            return None
        if N // g == 1:
            y[i] = 0
        else:
            y[i] = (r // g) * pow((d // g) % (N // g), -1, N // g) % (N // g)
    x = [sum(V[i][j] * y[j] for j in range(n)) % N for i in range(n)]
    return x
