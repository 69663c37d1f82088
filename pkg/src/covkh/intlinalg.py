"""Exact integer matrix routines: Smith normal form and linear solving.

All matrices are dense lists of lists of Python ints; sizes here stay in
the hundreds, so clarity wins over asymptotics.  Pivots are chosen by
smallest nonzero absolute value, which keeps intermediate entries tame
at desk scale without modular tricks.
"""

from __future__ import annotations


def identity(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(a: list[list[int]], b: list[list[int]]) -> list[list[int]]:
    if not a:
        return []
    cols = len(b[0]) if b else 0
    out = [[0] * cols for _ in a]
    for i, row in enumerate(a):
        for k, v in enumerate(row):
            if v:
                brow = b[k]
                orow = out[i]
                for j in range(cols):
                    orow[j] += v * brow[j]
    return out


def smith_normal_form(m: list[list[int]]):
    """(U, D, V) with U m V = D diagonal, d_1 | d_2 | ..., U, V unimodular."""
    rows = len(m)
    cols = len(m[0]) if rows else 0
    d = [row[:] for row in m]
    u = identity(rows)
    v = identity(cols)

    def swap_rows(i, j):
        if i != j:
            d[i], d[j] = d[j], d[i]
            u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        if i != j:
            for row in d:
                row[i], row[j] = row[j], row[i]
            for row in v:
                row[i], row[j] = row[j], row[i]

    def add_row(src, dst, c):
        drow, srow = d[dst], d[src]
        for j in range(cols):
            drow[j] += c * srow[j]
        udst, usrc = u[dst], u[src]
        for j in range(rows):
            udst[j] += c * usrc[j]

    def add_col(src, dst, c):
        for row in d:
            row[dst] += c * row[src]
        for row in v:
            row[dst] += c * row[src]

    def negate_row(i):
        d[i] = [-x for x in d[i]]
        u[i] = [-x for x in u[i]]

    def eliminate(t0: int) -> None:
        t = t0
        size = min(rows, cols)
        while t < size:
            pivot = None
            best = None
            for i in range(t, rows):
                for j in range(t, cols):
                    x = d[i][j]
                    if x and (best is None or abs(x) < best):
                        best = abs(x)
                        pivot = (i, j)
            if pivot is None:
                break
            swap_rows(t, pivot[0])
            swap_cols(t, pivot[1])
            while True:
                # clear the pivot column, re-pivoting on remainders
                for i in range(t + 1, rows):
                    if d[i][t]:
                        add_row(t, i, -(d[i][t] // d[t][t]))
                        if d[i][t]:
                            swap_rows(t, i)
                col_clear = all(d[i][t] == 0 for i in range(t + 1, rows))
                for j in range(t + 1, cols):
                    if d[t][j]:
                        add_col(t, j, -(d[t][j] // d[t][t]))
                        if d[t][j]:
                            swap_cols(t, j)
                            col_clear = False
                if col_clear and all(d[t][j] == 0 for j in range(t + 1, cols)):
                    break
            if d[t][t] < 0:
                negate_row(t)
            t += 1

    eliminate(0)
    # enforce the divisibility chain: fold an offending entry back in and
    # re-eliminate from that corner (gcds strictly shrink, so this stops)
    while True:
        size = min(rows, cols)
        bad = None
        for i in range(size - 1):
            a, b = d[i][i], d[i + 1][i + 1]
            if a and b and b % a != 0:
                bad = i
                break
        if bad is None:
            break
        add_col(bad + 1, bad, 1)
        eliminate(bad)
    return u, d, v


def diagonal(d: list[list[int]]) -> list[int]:
    n = min(len(d), len(d[0]) if d else 0)
    return [d[i][i] for i in range(n)]


def rank_and_divisors(m: list[list[int]]):
    """(rank, invariant factors > 1) of an integer matrix."""
    if not m or not m[0]:
        return 0, []
    _, d, _ = smith_normal_form(m)
    nonzero = [x for x in diagonal(d) if x]
    return len(nonzero), [abs(x) for x in nonzero if abs(x) != 1]


def det_bareiss(m: list[list[int]]) -> int:
    """Fraction-free determinant (used to certify unimodularity in tests)."""
    n = len(m)
    if n == 0:
        return 1
    a = [row[:] for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def rank_mod2(m: list[list[int]]) -> int:
    """Rank over GF(2), rows packed into Python ints."""
    rows = []
    for row in m:
        bits = 0
        for j, x in enumerate(row):
            if x & 1:
                bits |= 1 << j
        if bits:
            rows.append(bits)
    rank = 0
    while rows:
        piv = rows.pop()
        low = piv & -piv
        rows = [r ^ piv if r & low else r for r in rows]
        rows = [r for r in rows if r]
        rank += 1
    return rank


def solve_mod2(a_rows: list[dict[int, int]], b: list[int],
               ncols: int) -> list[int]:
    """One solution x of A x = b over GF(2); raises if inconsistent."""
    pivots: dict[int, tuple[int, int]] = {}
    for row, rhs in zip(a_rows, b):
        bits = 0
        for j, c in row.items():
            if c % 2:
                bits |= 1 << j
        rhs &= 1
        while True:
            if bits == 0:
                if rhs:
                    raise ValueError("inconsistent GF(2) system")
                break
            col = (bits & -bits).bit_length() - 1
            if col in pivots:
                pb, pr = pivots[col]
                bits ^= pb
                rhs ^= pr
            else:
                pivots[col] = (bits, rhs)
                break
    x = [0] * ncols
    for col in sorted(pivots, reverse=True):
        bits, rhs = pivots[col]
        acc = rhs
        j = col + 1
        rest = bits >> (col + 1)
        while rest:
            if rest & 1:
                acc ^= x[j]
            rest >>= 1
            j += 1
        x[col] = acc
    return x


def solve_integer(a_rows: list[dict[int, int]], b: list[int],
                  ncols: int) -> list[int]:
    """One integer solution x of A x = b; raises if none exists."""
    dense = [[row.get(j, 0) for j in range(ncols)] for row in a_rows]
    u, d, v = smith_normal_form(dense)
    nrows = len(dense)
    ub = [sum(u[i][k] * b[k] for k in range(nrows)) for i in range(nrows)]
    y = [0] * ncols
    size = min(nrows, ncols)
    for i in range(nrows):
        di = d[i][i] if i < size else 0
        if di == 0:
            if ub[i] != 0:
                raise ValueError("integer system has no solution")
            continue
        if ub[i] % di != 0:
            raise ValueError("integer system has no solution")
        y[i] = ub[i] // di
    return [sum(v[i][k] * y[k] for k in range(ncols)) for i in range(ncols)]
