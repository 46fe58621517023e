"""Dense linear algebra over a FieldSpec, over the rationals, and over the integers."""

from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .fields import FieldSpec

Matrix = List[List[int]]


def field_rank(F: FieldSpec, M: Sequence[Sequence[int]]) -> int:
    return len(field_row_echelon(F, M)[1])


def field_row_echelon(F: FieldSpec, M: Sequence[Sequence[int]]) -> Tuple[Matrix, List[int]]:
    """Reduced row echelon form and pivot columns."""
    A = [list(r) for r in M]
    if not A:
        return A, []
    nrows, ncols = len(A), len(A[0])
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if A[i][c]), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        inv = F.inv(A[r][c])
        A[r] = [F.mul(inv, x) for x in A[r]]
        for i in range(nrows):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
    return A, pivots


def field_det(F: FieldSpec, M: Sequence[Sequence[int]]) -> int:
    n = len(M)
    if any(len(r) != n for r in M):
        raise ValueError("determinant of a non-square matrix")
    A = [list(r) for r in M]
    det = 1
    for c in range(n):
        p = next((i for i in range(c, n) if A[i][c]), None)
        if p is None:
            return 0
        if p != c:
            A[c], A[p] = A[p], A[c]
            det = F.neg(det)
        piv = A[c][c]
        det = F.mul(det, piv)
        inv = F.inv(piv)
        for i in range(c + 1, n):
            if A[i][c]:
                f = F.mul(A[i][c], inv)
                row_c = A[c]
                A[i] = [F.sub(x, F.mul(f, y)) if y else x for x, y in zip(A[i], row_c)]
    return det


def field_nullspace(F: FieldSpec, M: Sequence[Sequence[int]], ncols: Optional[int] = None) -> List[List[int]]:
    if not M:
        return [[1 if i == j else 0 for i in range(ncols or 0)] for j in range(ncols or 0)]
    R, pivots = field_row_echelon(F, M)
    ncols = len(M[0])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for r, pc in enumerate(pivots):
            v[pc] = F.neg(R[r][f])
        basis.append(v)
    return basis


def field_matvec(F: FieldSpec, M: Sequence[Sequence[int]], v: Sequence[int]) -> List[int]:
    out = []
    for row in M:
        s = 0
        for a, b in zip(row, v):
            if a and b:
                s = F.add(s, F.mul(a, b))
        out.append(s)
    return out


# ------------------------------------------------------------- rationals
def fraction_rref(M: Sequence[Sequence]) -> Tuple[List[List[Fraction]], List[int]]:
    A = [[Fraction(x) for x in r] for r in M]
    if not A:
        return A, []
    nrows, ncols = len(A), len(A[0])
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if A[i][c] != 0), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        piv = A[r][c]
        A[r] = [x / piv for x in A[r]]
        for i in range(nrows):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
    return A, pivots


def fraction_rank(M: Sequence[Sequence]) -> int:
    return len(fraction_rref(M)[1]) if M else 0


def fraction_nullspace(M: Sequence[Sequence], ncols: int) -> List[List[Fraction]]:
    """Basis of the right nullspace, one vector per free column in increasing order."""
    if not M:
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    R, pivots = fraction_rref(M)
    basis = []
    for f in (c for c in range(ncols) if c not in pivots):
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -R[r][f]
        basis.append(v)
    return basis


def integer_det(M: Sequence[Sequence[int]]) -> int:
    """Exact integer determinant by Bareiss elimination."""
    n = len(M)
    if any(len(r) != n for r in M):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return 1
    A = [list(map(int, r)) for r in M]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            p = next((i for i in range(k + 1, n) if A[i][k]), None)
            if p is None:
                return 0
            A[k], A[p] = A[p], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]
