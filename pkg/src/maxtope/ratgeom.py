"""Exact rational scalars, vectors, and matrices.

Every geometric predicate downstream runs on `fractions.Fraction`; no
floating point enters any decision path. Vectors are flat tuples of
Fractions and matrices are tuples of row tuples.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

Rational = Fraction
RVector = tuple[Fraction, ...]
RMatrix = tuple[tuple[Fraction, ...], ...]


def fr(x) -> Fraction:
    """Coerce an int, string like '3/4', float-free numeric, or Fraction."""
    return x if isinstance(x, Fraction) else Fraction(x)


def vector(entries) -> RVector:
    return tuple(fr(x) for x in entries)


def matrix(rows) -> RMatrix:
    return tuple(tuple(fr(x) for x in row) for row in rows)


def zero_vector(n: int) -> RVector:
    return (Fraction(0),) * n


def unit_vector(n: int, i: int) -> RVector:
    return tuple(Fraction(1 if j == i else 0) for j in range(n))


def vadd(u: Sequence[Fraction], v: Sequence[Fraction]) -> RVector:
    return tuple(a + b for a, b in zip(u, v, strict=True))


def vsub(u: Sequence[Fraction], v: Sequence[Fraction]) -> RVector:
    return tuple(a - b for a, b in zip(u, v, strict=True))


def vneg(u: Sequence[Fraction]) -> RVector:
    return tuple(-a for a in u)


def vscale(c, u: Sequence[Fraction]) -> RVector:
    c = fr(c)
    return tuple(c * a for a in u)


def vdot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    return sum((a * b for a, b in zip(u, v, strict=True)), Fraction(0))


def mat_vec(A: Sequence[Sequence[Fraction]], x: Sequence[Fraction]) -> RVector:
    return tuple(vdot(row, x) for row in A)


def matmul(A, B) -> RMatrix:
    Bt = transpose(B)
    return tuple(tuple(vdot(row, col) for col in Bt) for row in A)


def transpose(A) -> RMatrix:
    return tuple(zip(*[tuple(row) for row in A])) if A else ()


def identity_matrix(n: int) -> RMatrix:
    return tuple(unit_vector(n, i) for i in range(n))


def int_scaled(v: Sequence[Fraction]) -> tuple[int, ...]:
    """Clear denominators of one vector by its positive lcm."""
    v = vector(v)
    scale = math.lcm(*(x.denominator for x in v)) if v else 1
    return tuple(int(x * scale) for x in v)


def _int_rows(M) -> list[list[int]]:
    return [list(int_scaled(row)) for row in M]


def rank(M) -> int:
    """Exact rank by fraction-free Bareiss elimination."""
    rows = _int_rows(M)
    if not rows or not rows[0]:
        return 0
    m, n = len(rows), len(rows[0])
    r = 0
    prev = 1
    for c in range(n):
        piv = next((i for i in range(r, m) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][c]
        for i in range(r + 1, m):
            ric = rows[i][c]
            row_i, row_r = rows[i], rows[r]
            for j in range(c + 1, n):
                row_i[j] = (row_i[j] * p - ric * row_r[j]) // prev
            row_i[c] = 0
        prev = p
        r += 1
        if r == m:
            break
    return r


def det_int(rows: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix, Bareiss style."""
    a = [list(r) for r in rows]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            piv = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if piv is None:
                return 0
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * akk - aik * a[k][j]) // prev
        prev = akk
    return sign * a[-1][-1]


def _eliminate(echelon: list[list[Fraction]], pivots: list[int], v) -> list[Fraction]:
    w = list(v)
    for row, p in zip(echelon, pivots):
        if w[p]:
            f = w[p] / row[p]
            for j in range(len(w)):
                w[j] -= f * row[j]
    return w


def solve_affine_hull(points) -> tuple[int, tuple[RVector, ...], RVector]:
    """Affine dimension, a basis of the direction space, and a base point.

    The dimension and the span are invariant under permutation of the
    input; the particular basis depends on input order.
    """
    pts = [vector(p) for p in points]
    if not pts:
        raise ValueError("affine hull of an empty point set")
    base = pts[0]
    basis: list[RVector] = []
    echelon: list[list[Fraction]] = []
    pivots: list[int] = []
    for p in pts[1:]:
        v = vsub(p, base)
        w = _eliminate(echelon, pivots, v)
        piv = next((j for j, x in enumerate(w) if x), None)
        if piv is not None:
            basis.append(v)
            echelon.append(w)
            pivots.append(piv)
    return len(basis), tuple(basis), base


def primitive_ray(v) -> tuple[int, ...]:
    """Shortest integer vector that is a positive multiple of v."""
    ints = int_scaled(v)
    if not any(ints):
        raise ValueError("degenerate ray: zero vector")
    g = math.gcd(*ints)
    return tuple(x // g for x in ints)


def rref(M) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and pivot columns, over Fractions."""
    rows = [list(vector(r)) for r in M]
    if not rows:
        return [], []
    n = len(rows[0])
    pivots: list[int] = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][c]
        rows[r] = [x / p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def solve_linear(A, b) -> RVector | None:
    """One exact solution of A x = b, or None if inconsistent.

    Free variables are set to zero.
    """
    A = matrix(A)
    b = vector(b)
    if not A:
        return () if not any(b) else None
    n = len(A[0])
    aug = [list(row) + [bi] for row, bi in zip(A, b, strict=True)]
    red, pivots = rref(aug)
    for row in red:
        if not any(row[:n]) and row[n]:
            return None
    x = [Fraction(0)] * n
    for row, p in zip(red, pivots):
        if p == n:
            return None
        x[p] = row[n]
    return tuple(x)


def solve_matrix(A, B) -> RMatrix | None:
    """Exact X with A X = B (column by column), or None if inconsistent."""
    cols = []
    for col in transpose(B):
        x = solve_linear(A, col)
        if x is None:
            return None
        cols.append(x)
    return transpose(cols) if cols else ()


def nullspace(M) -> tuple[RVector, ...]:
    """Basis of the right nullspace of M."""
    M = matrix(M)
    if not M:
        return ()
    n = len(M[0])
    red, pivots = rref(M)
    free = [j for j in range(n) if j not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(tuple(v))
    return tuple(basis)


def pseudo_inverse_rows(basis) -> RMatrix:
    """Rows G with G (x - base) giving coordinates in `basis`.

    Requires the basis vectors to be linearly independent; G = (U^T U)^-1 U^T
    for U the matrix with basis vectors as columns.
    """
    U = transpose(matrix(basis))
    Ut = matrix(basis)
    gram = matmul(Ut, U)
    k = len(gram)
    inv_cols = solve_matrix(gram, identity_matrix(k))
    if inv_cols is None:
        raise ValueError("basis is not independent")
    return matmul(inv_cols, Ut)
