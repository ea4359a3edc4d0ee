"""Exact integer and rational linear algebra on small dense matrices.

Matrices are plain lists of rows holding ``int`` or ``Fraction`` entries.
Everything here is exact; sizes are tiny (rank <= 9), so no attempt is made
at asymptotic efficiency.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

Matrix = list[list]


def to_fraction(value) -> Fraction:
    """Parse ``"3/4"``, ints, or Fractions into a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def fmt_fraction(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def frac_mod1(q: Fraction) -> Fraction:
    return q - (q.numerator // q.denominator)


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def zeros(m: int, n: int) -> Matrix:
    return [[0] * n for _ in range(m)]


def transpose(a: Sequence[Sequence]) -> Matrix:
    if not a:
        return []
    return [list(col) for col in zip(*a)]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    bt = list(zip(*b)) if b else []
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def matvec(a: Sequence[Sequence], v: Sequence) -> list:
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def dot(u: Sequence, v: Sequence):
    return sum(x * y for x, y in zip(u, v))


def inverse(a: Sequence[Sequence]) -> Matrix:
    """Gauss-Jordan inverse over the rationals."""
    n = len(a)
    m = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(a)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            raise ValueError("matrix is singular")
        m[col], m[piv] = m[piv], m[col]
        p = m[col][col]
        m[col] = [x / p for x in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return [row[n:] for row in m]


def integral(a: Sequence[Sequence]) -> Matrix:
    """Convert a rational matrix known to be integral to ints."""
    out = []
    for row in a:
        out_row = []
        for x in row:
            x = Fraction(x)
            if x.denominator != 1:
                raise ValueError("matrix is not integral")
            out_row.append(x.numerator)
        out.append(out_row)
    return out


def determinant(a: Sequence[Sequence]) -> Fraction:
    n = len(a)
    m = [[Fraction(x) for x in row] for row in a]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det *= m[col][col]
        for r in range(col + 1, n):
            f = m[r][col] / m[col][col]
            if f:
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return det


def rank(a: Sequence[Sequence]) -> int:
    m = [[Fraction(x) for x in row] for row in a]
    rk, cols = 0, len(m[0]) if m else 0
    for col in range(cols):
        piv = next((r for r in range(rk, len(m)) if m[r][col] != 0), None)
        if piv is None:
            continue
        m[rk], m[piv] = m[piv], m[rk]
        for r in range(len(m)):
            if r != rk and m[r][col] != 0:
                f = m[r][col] / m[rk][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[rk])]
        rk += 1
    return rk


def solve(a: Sequence[Sequence], b: Sequence) -> list[Fraction] | None:
    """One rational solution of ``a x = b``, or None if inconsistent."""
    rows, cols = len(a), (len(a[0]) if a else 0)
    m = [[Fraction(x) for x in row] + [Fraction(bb)] for row, bb in zip(a, b)]
    pivots = []
    r = 0
    for col in range(cols):
        piv = next((i for i in range(r, rows) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][col]
        m[r] = [x / p for x in m[r]]
        for i in range(rows):
            if i != r and m[i][col] != 0:
                f = m[i][col]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
    if any(m[i][cols] != 0 for i in range(r, rows)):
        return None
    x = [Fraction(0)] * cols
    for i, col in enumerate(pivots):
        x[col] = m[i][cols]
    return x


def common_denominator(values) -> int:
    den = 1
    for v in values:
        den = lcm(den, Fraction(v).denominator)
    return den


# -- integer normal forms -----------------------------------------------------

def hermite_rows(gens: Sequence[Sequence[int]]) -> Matrix:
    """Row-style Hermite normal form of the lattice spanned by integer rows.

    Returns the nonzero rows, echelon with positive pivots and the entries
    above each pivot reduced into ``[0, pivot)``. Two generating sets span the
    same lattice iff their Hermite forms agree.
    """
    m = [[int(x) for x in row] for row in gens]
    if not m:
        return []
    ncols = len(m[0])
    r = 0
    for col in range(ncols):
        while True:
            nz = [i for i in range(r, len(m)) if m[i][col] != 0]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(m[i][col]))
            m[r], m[piv] = m[piv], m[r]
            done = True
            for i in range(r + 1, len(m)):
                if m[i][col]:
                    q = m[i][col] // m[r][col]
                    m[i] = [x - q * y for x, y in zip(m[i], m[r])]
                    if m[i][col]:
                        done = False
            if done:
                break
        if r < len(m) and m[r][col] != 0:
            if m[r][col] < 0:
                m[r] = [-x for x in m[r]]
            for i in range(r):
                q = m[i][col] // m[r][col]
                if q:
                    m[i] = [x - q * y for x, y in zip(m[i], m[r])]
            r += 1
            if r == len(m):
                break
    return [row for row in m[:r]]


def hermite_rational_rows(gens: Sequence[Sequence]) -> list[list[Fraction]]:
    """Hermite form for a lattice given by rational generators."""
    if not gens:
        return []
    den = common_denominator(x for row in gens for x in row)
    scaled = [[int(Fraction(x) * den) for x in row] for row in gens]
    return [[Fraction(x, den) for x in row] for row in hermite_rows(scaled)]


def smith(a: Sequence[Sequence[int]]) -> tuple[list[int], Matrix, Matrix]:
    """Smith normal form ``U a V = D`` with unimodular ``U``, ``V``.

    Returns ``(diag, U, V)``; ``diag`` has ``min(m, n)`` nonnegative entries
    forming a divisibility chain (zeros last).
    """
    m = [[int(x) for x in row] for row in a]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    u = identity(rows)
    v = identity(cols)

    def swap_rows(i, j):
        m[i], m[j] = m[j], m[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in m:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst += q * row_src
        m[dst] = [x + q * y for x, y in zip(m[dst], m[src])]
        u[dst] = [x + q * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, q):
        for row in m:
            row[dst] += q * row[src]
        for row in v:
            row[dst] += q * row[src]

    for t in range(min(rows, cols)):
        while True:
            cands = [(abs(m[i][j]), i, j) for i in range(t, rows)
                     for j in range(t, cols) if m[i][j] != 0]
            if not cands:
                break
            _, i, j = min(cands)
            swap_rows(t, i)
            swap_cols(t, j)
            clean = True
            for i in range(t + 1, rows):
                if m[i][t]:
                    add_row(i, t, -(m[i][t] // m[t][t]))
                    clean = clean and m[i][t] == 0
            for j in range(t + 1, cols):
                if m[t][j]:
                    add_col(j, t, -(m[t][j] // m[t][t]))
                    clean = clean and m[t][j] == 0
            if not clean:
                continue
            bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols)
                        if m[i][j] % m[t][t]), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if m[t][t] < 0:
            m[t] = [-x for x in m[t]]
            u[t] = [-x for x in u[t]]
    diag = [m[i][i] for i in range(min(rows, cols))]
    return diag, u, v


def lattice_coordinates(basis_rows: Sequence[Sequence], v: Sequence) -> list[Fraction] | None:
    """Coefficients ``k`` with ``sum k_i basis_i = v`` (rational), or None."""
    return solve(transpose(basis_rows), v)


def in_lattice(basis_rows: Sequence[Sequence], v: Sequence) -> bool:
    k = lattice_coordinates(basis_rows, v)
    return k is not None and all(c.denominator == 1 for c in k)


def gcd_list(values) -> int:
    g = 0
    for x in values:
        g = gcd(g, int(x))
    return g
