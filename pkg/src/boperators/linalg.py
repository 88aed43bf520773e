"""Generic exact Gaussian elimination over any field-element type."""


def rref(rows, zero=None):
    """Reduced row echelon form; returns (rows, pivot_columns).

    Input rows are lists of field elements (supporting inverse and the ring
    operators); zero rows are dropped from the output."""
    rows = [list(r) for r in rows]
    if not rows:
        return [], []
    n = len(rows[0])
    pivots = []
    r = 0
    for c in range(n):
        pivot = None
        for i in range(r, len(rows)):
            if not rows[i][c].is_zero():
                pivot = i
                break
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and not rows[i][c].is_zero():
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def kernel_basis(matrix, zero, one):
    """Canonical kernel basis of a matrix (list of rows) over a field.

    One basis vector per free column, with a 1 in the free position; this is
    the standard parametrization read off the RREF."""
    if not matrix:
        return []
    ncols = len(matrix[0])
    red, pivots = rref(matrix)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [zero] * ncols
        v[fc] = one
        for ri, pc in enumerate(pivots):
            v[pc] = -red[ri][fc]
        basis.append(v)
    return basis


def solve(matrix, rhs, zero):
    """One solution of matrix * x = rhs, or None when inconsistent."""
    if not matrix:
        return [] if all(b.is_zero() for b in rhs) else None
    aug = [list(row) + [b] for row, b in zip(matrix, rhs)]
    red, pivots = rref(aug)
    ncols = len(matrix[0])
    for row in red:
        if all(x.is_zero() for x in row[:ncols]) and not row[ncols].is_zero():
            return None
    sol = [zero] * ncols
    for ri, pc in enumerate(pivots):
        if pc < ncols:
            sol[pc] = red[ri][ncols]
    return sol


def row_space_contains(rref_rows, vector):
    """Does the echelonized row space contain vector?"""
    v = list(vector)
    for row in rref_rows:
        lead = next((i for i, x in enumerate(row) if not x.is_zero()), None)
        if lead is None:
            continue
        if not v[lead].is_zero():
            f = v[lead]
            v = [a - f * b for a, b in zip(v, row)]
    return all(x.is_zero() for x in v)
