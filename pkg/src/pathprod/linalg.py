"""Dense exact linear algebra over a :class:`~pathprod.scalars.Field`.

Matrices are lists of rows. The sizes that occur (one graded piece of a
truncated ring at a time) are small, so plain Gaussian elimination is enough.
"""

from __future__ import annotations

from .scalars import Field


def row_reduce(rows, field: Field):
    """Return ``(rref, pivots)`` for the matrix ``rows``."""
    work = [[field(v) for v in row] for row in rows]
    if not work:
        return [], []
    n_cols = len(work[0])
    pivots = []
    r = 0
    for col in range(n_cols):
        pivot = next((i for i in range(r, len(work)) if work[i][col] != 0), None)
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        inv = field.one / work[r][col]
        work[r] = [v * inv for v in work[r]]
        for i in range(len(work)):
            if i != r and work[i][col] != 0:
                f = work[i][col]
                work[i] = [a - f * b for a, b in zip(work[i], work[r])]
        pivots.append(col)
        r += 1
        if r == len(work):
            break
    return work[:r], pivots


def rank(rows, field: Field) -> int:
    return len(row_reduce(rows, field)[1])


def nullspace(rows, n_cols: int, field: Field):
    """Basis of ``{x : rows @ x = 0}`` as a list of column vectors."""
    if not rows:
        return [[field.one if i == j else field.zero for i in range(n_cols)] for j in range(n_cols)]
    rref, pivots = row_reduce(rows, field)
    free = [c for c in range(n_cols) if c not in pivots]
    basis = []
    for f in free:
        vec = [field.zero] * n_cols
        vec[f] = field.one
        for row, p in zip(rref, pivots):
            vec[p] = -row[f]
        basis.append(vec)
    return basis


def inverse(matrix, field: Field):
    """Inverse of a square matrix; raises ``ValueError`` if singular."""
    n = len(matrix)
    aug = [list(row) + [field.one if i == j else field.zero for j in range(n)]
           for i, row in enumerate(matrix)]
    rref, pivots = row_reduce(aug, field)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise ValueError("matrix is singular")
    return [row[n:] for row in rref[:n]]


def in_span(vec, rows, field: Field) -> bool:
    return rank(list(rows) + [vec], field) == rank(rows, field)
