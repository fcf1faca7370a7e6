"""Exact linear algebra over a FieldSpec.

Dense matrices are tuples of row tuples of field codes.  The elimination core
works on sparse rows (``dict`` column -> nonzero code) because the systems built
by the invariant layer are extremely sparse.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .gf import FieldSpec

Matrix = tuple[tuple[int, ...], ...]
SparseRow = dict[int, int]


def identity(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def zeros(rows: int, cols: int) -> Matrix:
    return tuple((0,) * cols for _ in range(rows))


def matmul(a: Matrix, b: Matrix, field: FieldSpec) -> Matrix:
    if not a:
        return ()
    n, m = len(b), len(b[0]) if b else 0
    if len(a[0]) != n:
        raise ValueError("matrix shapes do not match")
    cols = [[(i, b[i][j]) for i in range(n) if b[i][j]] for j in range(m)]
    add, mul = field.add, field.mul
    out = []
    for row in a:
        new = []
        for col in cols:
            s = 0
            for i, y in col:
                x = row[i]
                if x:
                    s = add(s, mul(x, y))
            new.append(s)
        out.append(tuple(new))
    return tuple(out)


def matvec(a: Matrix, v: Sequence[int], field: FieldSpec) -> tuple[int, ...]:
    add, mul = field.add, field.mul
    out = []
    for row in a:
        s = 0
        for x, y in zip(row, v):
            if x and y:
                s = add(s, mul(x, y))
        out.append(s)
    return tuple(out)


def sub(a: Matrix, b: Matrix, field: FieldSpec) -> Matrix:
    return tuple(tuple(field.sub(x, y) for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def to_sparse(row: Sequence[int]) -> SparseRow:
    return {j: c for j, c in enumerate(row) if c}


def _axpy(target: SparseRow, c: int, src: SparseRow, field: FieldSpec) -> None:
    """``target -= c * src`` in place."""
    sub, mul = field.sub, field.mul
    for j, y in src.items():
        v = sub(target.get(j, 0), mul(c, y))
        if v:
            target[j] = v
        else:
            target.pop(j, None)


def rref_sparse(rows: Iterable[SparseRow], field: FieldSpec) -> list[SparseRow]:
    """Reduced row-echelon form; pivot of a row is its smallest column, with coefficient 1.

    Returned rows are sorted by pivot column.
    """
    pivots: dict[int, SparseRow] = {}
    for row in rows:
        r = dict(row)
        while r:
            c = min(r)
            piv = pivots.get(c)
            if piv is None:
                inv = field.inv(r[c])
                if inv != 1:
                    r = {j: field.mul(inv, v) for j, v in r.items()}
                pivots[c] = r
                break
            _axpy(r, r[c], piv, field)
    order = sorted(pivots)
    # back substitution, largest pivot first
    for idx in range(len(order) - 1, -1, -1):
        c = order[idx]
        piv = pivots[c]
        for c2 in order[:idx]:
            other = pivots[c2]
            coef = other.get(c)
            if coef:
                _axpy(other, coef, piv, field)
    return [pivots[c] for c in order]


def kernel_sparse(rows: Iterable[SparseRow], ncols: int, field: FieldSpec) -> list[SparseRow]:
    """Basis of ``{x : row . x = 0 for all rows}``, itself in reduced row-echelon form."""
    reduced = rref_sparse(rows, field)
    pivot_cols = {min(r): r for r in reduced}
    free = [j for j in range(ncols) if j not in pivot_cols]
    by_free: dict[int, SparseRow] = {f: {f: 1} for f in free}
    for pc, r in pivot_cols.items():
        for j, v in r.items():
            if j != pc:
                by_free[j][pc] = field.neg(v)
    return rref_sparse((by_free[f] for f in free), field)


def rref(matrix: Sequence[Sequence[int]], field: FieldSpec) -> Matrix:
    if not matrix:
        return ()
    n = len(matrix[0])
    return tuple(tuple(r.get(j, 0) for j in range(n)) for r in rref_sparse(map(to_sparse, matrix), field))


def rank(matrix: Sequence[Sequence[int]], field: FieldSpec) -> int:
    return len(rref_sparse(map(to_sparse, matrix), field))


def kernel(matrix: Sequence[Sequence[int]], ncols: int, field: FieldSpec) -> list[tuple[int, ...]]:
    basis = kernel_sparse(map(to_sparse, matrix), ncols, field)
    return [tuple(v.get(j, 0) for j in range(ncols)) for v in basis]


def inverse(matrix: Matrix, field: FieldSpec) -> Matrix:
    n = len(matrix)
    aug = [to_sparse(tuple(row) + tuple(1 if i == j else 0 for j in range(n))) for i, row in enumerate(matrix)]
    red = rref_sparse(aug, field)
    if len(red) < n or any(min(r) != i for i, r in enumerate(red)):
        raise ValueError("matrix is singular")
    return tuple(tuple(r.get(n + j, 0) for j in range(n)) for r in red)


def block_diag(a: Matrix, b: Matrix) -> Matrix:
    na, nb = len(a), len(b)
    top = tuple(tuple(row) + (0,) * nb for row in a)
    bottom = tuple((0,) * na + tuple(row) for row in b)
    return top + bottom


def is_monomial_matrix(m: Matrix) -> bool:
    """Exactly one nonzero entry in every row and every column."""
    n = len(m)
    seen = set()
    for row in m:
        nz = [j for j, c in enumerate(row) if c]
        if len(nz) != 1 or nz[0] in seen:
            return False
        seen.add(nz[0])
    return len(seen) == n
