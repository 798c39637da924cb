"""Exact Gaussian elimination and nullspaces over F_q.

Matrices are lists of rows of ints in range(q).  Everything is schoolbook
elimination; systems here stay small (a few hundred unknowns at most), so
clarity wins over asymptotics.
"""

from __future__ import annotations


def rref(field, rows, ncols):
    """Reduced row echelon form; returns (new_rows, pivot_columns)."""
    mat = [list(r) for r in rows if any(r)]
    pivots = []
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, len(mat)):
            if mat[i][c]:
                pr = i
                break
        if pr is None:
            continue
        mat[r], mat[pr] = mat[pr], mat[r]
        inv = field.inv(mat[r][c])
        if inv != 1:
            mat[r] = [field.mul(inv, x) for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c]:
                f = mat[i][c]
                row_r = mat[r]
                row_i = mat[i]
                for j in range(c, ncols):
                    if row_r[j]:
                        row_i[j] = field.sub(row_i[j], field.mul(f, row_r[j]))
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return mat[:r], pivots


def nullspace(field, rows, ncols):
    """Basis of the right kernel, canonical (one vector per free column)."""
    mat, pivots = rref(field, rows, ncols)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for fc in free:
        vec = [0] * ncols
        vec[fc] = 1
        for r, pc in enumerate(pivots):
            # x_pc = -sum over free columns of coefficient
            vec[pc] = field.neg(mat[r][fc])
        basis.append(vec)
    return basis


def solve_affine(field, rows, rhs, ncols):
    """All solutions of A x = b: (particular, nullspace basis) or None."""
    aug = [list(r) + [v] for r, v in zip(rows, rhs)]
    mat, pivots = rref(field, aug, ncols + 1)
    if ncols in pivots:
        return None
    part = [0] * ncols
    for r, pc in enumerate(pivots):
        part[pc] = mat[r][ncols]
    return part, nullspace(field, [r[:ncols] for r in mat], ncols)


def rank(field, rows, ncols):
    return len(rref(field, rows, ncols)[0])
