"""Exact linear algebra over the rationals.

Matrices are tuples of row tuples of Fraction.  Everything here is plain
Gauss elimination; determinism matters more than speed at the block sizes
the category engine produces.
"""

from __future__ import annotations

from fractions import Fraction

Matrix = tuple[tuple[Fraction, ...], ...]


def mat(rows) -> Matrix:
    """Freeze any nested sequence of numbers into a rational matrix."""
    out = tuple(tuple(Fraction(x) for x in row) for row in rows)
    if out and any(len(row) != len(out[0]) for row in out):
        raise ValueError("ragged matrix")
    return out


def zeros(nrows: int, ncols: int) -> Matrix:
    return tuple((Fraction(0),) * ncols for _ in range(nrows))


def identity(n: int) -> Matrix:
    return tuple(tuple(Fraction(1 if i == j else 0) for j in range(n)) for i in range(n))


def shape(a: Matrix) -> tuple[int, int]:
    return (len(a), len(a[0]) if a else 0)


def transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a)) if a else ()


def matmul(a: Matrix, b: Matrix) -> Matrix:
    ra, ca = shape(a)
    rb, cb = shape(b)
    if ca != rb:
        raise ValueError(f"shape mismatch: {ra}x{ca} times {rb}x{cb}")
    bt = transpose(b)
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def madd(a: Matrix, b: Matrix) -> Matrix:
    if shape(a) != shape(b):
        raise ValueError("shape mismatch in addition")
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def rref(a: Matrix) -> tuple[Matrix, tuple[int, ...]]:
    """Reduced row echelon form and the pivot column indices."""
    nrows, ncols = shape(a)
    rows = [list(r) for r in a]
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = Fraction(1) / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c] != 0:
                factor = rows[i][c]
                rows[i] = [x - factor * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return tuple(tuple(row) for row in rows), tuple(pivots)


def rank(a: Matrix) -> int:
    return len(rref(a)[1])


def nullspace(a: Matrix) -> list[tuple[Fraction, ...]]:
    """Basis of the right kernel, one vector per free column, deterministic."""
    nrows, ncols = shape(a)
    reduced, pivots = rref(a)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            vec[pc] = -reduced[r][fc]
        basis.append(tuple(vec))
    return basis


def left_nullspace(a: Matrix) -> list[tuple[Fraction, ...]]:
    """Basis of {y : y a = 0}, as row vectors."""
    return nullspace(transpose(a))


def columns_matrix(cols: list[tuple[Fraction, ...]], nrows: int) -> Matrix:
    """Stack column vectors into a matrix (nrows x len(cols))."""
    return tuple(tuple(col[i] for col in cols) for i in range(nrows))


def rows_matrix(rows: list[tuple[Fraction, ...]], ncols: int) -> Matrix:
    return tuple(tuple(row) for row in rows) if rows else ()


def solve(a: Matrix, b: Matrix) -> Matrix:
    """The unique X with a X = b; requires full column rank and consistency."""
    nrows, ncols = shape(a)
    brows, bcols = shape(b)
    if brows != nrows:
        raise ValueError("right-hand side has wrong number of rows")
    augmented = tuple(ra + rb for ra, rb in zip(a, b)) if nrows else ()
    reduced, pivots = rref(augmented)
    if any(p >= ncols for p in pivots):
        raise ValueError("inconsistent linear system")
    if len(pivots) != ncols:
        raise ValueError("system is underdetermined")
    out = [[Fraction(0)] * bcols for _ in range(ncols)]
    for r, pc in enumerate(pivots):
        for j in range(bcols):
            out[pc][j] = reduced[r][ncols + j]
    return tuple(tuple(row) for row in out)


def right_inverse(a: Matrix) -> Matrix:
    """Some X with a X = I; requires full row rank."""
    nrows, _ = shape(a)
    gram = matmul(a, transpose(a))
    inv_gram = solve(gram, identity(nrows))
    return matmul(transpose(a), inv_gram)


def is_invertible(a: Matrix) -> bool:
    nrows, ncols = shape(a)
    return nrows == ncols and rank(a) == nrows
