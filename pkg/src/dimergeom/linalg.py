"""Dense linear algebra over the active scalar backend.

Matrices are lists of row lists.  The rational backend is exact Gaussian
elimination over Fractions; the float backend uses partial pivoting with
all zero decisions routed through :func:`scalars.is_zero` at the scale of
the input matrix.
"""
from __future__ import annotations

from .scalars import is_zero, one, zero


def _matrix_scale(rows) -> float:
    s = 0.0
    for row in rows:
        for x in row:
            ax = abs(x)
            if ax > s:
                s = float(ax)
    return s if s > 0 else 1.0


def rref(rows):
    """Reduced row echelon form.  Returns (rref_rows, pivot_columns)."""
    m = [list(r) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    scale = _matrix_scale(m)
    pivots = []
    r = 0
    for c in range(ncols):
        if r >= len(m):
            break
        # partial pivot: largest magnitude in column c at/below row r
        best, best_val = None, None
        for i in range(r, len(m)):
            v = abs(m[i][c])
            if not is_zero(m[i][c], scale=scale) and (best is None or v > best_val):
                best, best_val = i, v
        if best is None:
            continue
        m[r], m[best] = m[best], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(len(m)):
            if i != r and not is_zero(m[i][c], scale=scale):
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m[:r], pivots


def rank(rows) -> int:
    reduced, pivots = rref(rows)
    return len(pivots)


def nullspace(rows):
    """Basis of the right kernel {x : rows @ x = 0}, as a list of vectors."""
    if not rows:
        return []
    ncols = len(rows[0])
    reduced, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [zero()] * ncols
        v[fc] = one()
        for r, pc in enumerate(pivots):
            v[pc] = -reduced[r][fc]
        basis.append(v)
    return basis


def solve(rows, rhs):
    """Solve rows @ x = rhs.

    Returns (status, x, kernel) where status is "unique", "underdetermined"
    or "inconsistent"; x is a particular solution when one exists and kernel
    is a basis of the homogeneous solutions.
    """
    if not rows:
        return "underdetermined", None, []
    ncols = len(rows[0])
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    reduced, pivots = rref(aug)
    if ncols in pivots:
        return "inconsistent", None, []
    x = [zero()] * ncols
    for r, pc in enumerate(pivots):
        x[pc] = reduced[r][ncols]
    ker = nullspace(rows)
    if ker:
        return "underdetermined", x, ker
    return "unique", x, []


def det(rows):
    """Determinant by fraction-friendly Gaussian elimination."""
    n = len(rows)
    if n == 0:
        return one()
    m = [list(r) for r in rows]
    scale = _matrix_scale(m)
    sign = one()
    acc = one()
    for c in range(n):
        best, best_val = None, None
        for i in range(c, n):
            v = abs(m[i][c])
            if not is_zero(m[i][c], scale=scale) and (best is None or v > best_val):
                best, best_val = i, v
        if best is None:
            return zero()
        if best != c:
            m[c], m[best] = m[best], m[c]
            sign = -sign
        pv = m[c][c]
        acc = acc * pv
        for i in range(c + 1, n):
            if not is_zero(m[i][c], scale=scale):
                f = m[i][c] / pv
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return sign * acc


def mat_vec(rows, v):
    return [sum(a * b for a, b in zip(r, v)) for r in rows]
