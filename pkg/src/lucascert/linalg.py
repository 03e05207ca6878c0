"""Small dense exact linear algebra over Q or F_p (RREF, kernel bases)."""


def rref(field, rows):
    """Reduced row echelon form in place; returns the list of pivot columns."""
    if not rows:
        return []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        if r >= len(rows):
            break
        pivot = None
        for i in range(r, len(rows)):
            if not field.is_zero(rows[i][c]):
                pivot = i
                break
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = field.inv(rows[r][c])
        rows[r] = [field.mul(inv, v) for v in rows[r]]
        for i in range(len(rows)):
            if i == r or field.is_zero(rows[i][c]):
                continue
            factor = rows[i][c]
            rows[i] = [
                field.sub(v, field.mul(factor, w)) for v, w in zip(rows[i], rows[r])
            ]
        pivots.append(c)
        r += 1
    return pivots


def kernel_basis(field, rows, ncols):
    """Basis of the right kernel of the matrix (list of coefficient vectors)."""
    mat = [list(row) for row in rows if any(not field.is_zero(v) for v in row)]
    pivots = rref(field, mat)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for fc in free:
        vec = [field.zero] * ncols
        vec[fc] = field.one
        for r, pc in enumerate(pivots):
            vec[pc] = field.neg(mat[r][fc])
        basis.append(vec)
    return basis
