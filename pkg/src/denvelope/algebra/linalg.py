"""Exact linear solving over the scalar field.

Fraction-free (Bareiss) forward elimination on integer-cleared rows keeps
intermediate entries small, then a reduced echelon pass extracts one
deterministic particular solution and a reduced kernel basis.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as int_gcd
from typing import List, Optional, Sequence, Tuple

from .scalar import ONE, ZERO, Scalar

Vector = List[Scalar]


def _clear_row(row: Vector) -> Vector:
    den = 1
    num = 0
    for c in row:
        for part in (c.a, c.b):
            den = den * part.denominator // int_gcd(den, part.denominator)
            num = int_gcd(num, part.numerator)
    if num == 0:
        return row
    s = Fraction(den, num)
    return [c * s for c in row]


def solve_affine(
    rows: Sequence[Sequence[Scalar]], rhs: Sequence[Scalar]
) -> Tuple[Optional[Vector], List[Vector]]:
    """Solve rows*x = rhs exactly.

    Returns (particular, kernel_basis); particular is None when the system
    is inconsistent.  The particular solution sets all free variables to
    zero; the kernel basis is the reduced one, a vector per free column in
    increasing column order.  Both are deterministic for a given input.
    """
    m = len(rows)
    if m == 0:
        raise ValueError("empty system")
    if m != len(rhs):
        raise ValueError("row/rhs length mismatch")
    aug = [_clear_row(list(r) + [b]) for r, b in zip(rows, rhs)]
    n = len(rows[0])
    for r in aug:
        if len(r) != n + 1:
            raise ValueError("ragged matrix")

    # Bareiss forward elimination
    piv_rows: List[int] = []
    piv_cols: List[int] = []
    prev = ONE
    r = 0
    for col in range(n):
        sel = None
        for i in range(r, m):
            if aug[i][col]:
                sel = i
                break
        if sel is None:
            continue
        aug[r], aug[sel] = aug[sel], aug[r]
        piv = aug[r][col]
        for i in range(r + 1, m):
            ric = aug[i][col]
            row_i = aug[i]
            row_r = aug[r]
            for j in range(col, n + 1):
                row_i[j] = (piv * row_i[j] - ric * row_r[j]) / prev
            row_i[col] = ZERO
        piv_rows.append(r)
        piv_cols.append(col)
        prev = piv
        r += 1
        if r == m:
            break

    rank = len(piv_cols)
    # consistency: any zero row with nonzero rhs
    for i in range(rank, m):
        if any(aug[i][j] for j in range(n)):
            raise ArithmeticError("elimination left a nonzero row below the rank")
        if aug[i][n]:
            return None, _kernel(aug, piv_cols, n, rank)

    return _particular(aug, piv_cols, n, rank), _kernel(aug, piv_cols, n, rank)


def _reduced_rows(aug, piv_cols, n, rank):
    # normalize pivots to 1 and eliminate above, in place on a copy
    rows = [list(aug[i]) for i in range(rank)]
    for r in range(rank - 1, -1, -1):
        col = piv_cols[r]
        inv = rows[r][col].inverse()
        rows[r] = [c * inv for c in rows[r]]
        for i in range(r):
            f = rows[i][col]
            if f:
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
    return rows


def _particular(aug, piv_cols, n, rank) -> Vector:
    rows = _reduced_rows(aug, piv_cols, n, rank)
    x = [ZERO] * n
    for r, col in enumerate(piv_cols):
        x[col] = rows[r][n]
    return x


def _kernel(aug, piv_cols, n, rank) -> List[Vector]:
    rows = _reduced_rows(aug, piv_cols, n, rank)
    piv_set = set(piv_cols)
    basis = []
    for free in range(n):
        if free in piv_set:
            continue
        v = [ZERO] * n
        v[free] = ONE
        for r, col in enumerate(piv_cols):
            v[col] = -rows[r][free]
        basis.append(v)
    return basis


def matrix_rank(rows: Sequence[Sequence[Scalar]]) -> int:
    if not rows:
        return 0
    zero_rhs = [ZERO] * len(rows)
    aug = [_clear_row(list(r) + [b]) for r, b in zip(rows, zero_rhs)]
    n = len(rows[0])
    m = len(rows)
    prev = ONE
    r = 0
    rank = 0
    for col in range(n):
        sel = None
        for i in range(r, m):
            if aug[i][col]:
                sel = i
                break
        if sel is None:
            continue
        aug[r], aug[sel] = aug[sel], aug[r]
        piv = aug[r][col]
        for i in range(r + 1, m):
            ric = aug[i][col]
            for j in range(col, n):
                aug[i][j] = (piv * aug[i][j] - ric * aug[r][j]) / prev
            aug[i][col] = ZERO
        prev = piv
        rank += 1
        r += 1
        if r == m:
            break
    return rank


def in_span(vectors: Sequence[Vector], target: Vector) -> bool:
    """Is target in the exact linear span of vectors?"""
    if not any(target):
        return True
    if not vectors:
        return False
    base = [list(v) for v in vectors]
    return matrix_rank(base) == matrix_rank(base + [list(target)])


def same_span(a: Sequence[Vector], b: Sequence[Vector]) -> bool:
    ra = matrix_rank([list(v) for v in a]) if a else 0
    rb = matrix_rank([list(v) for v in b]) if b else 0
    if ra != rb:
        return False
    joint = [list(v) for v in a] + [list(v) for v in b]
    return (matrix_rank(joint) if joint else 0) == ra
