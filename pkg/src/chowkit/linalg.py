"""Exact linear algebra over Q and over Q[g].

Small dense matrices only.  Entries are Fractions (after specializing g)
or ParamPoly (symbolic in g).  Determinants use fraction-free Bareiss
elimination so every intermediate division is exact; symbolic ranks insist
on pivots that provably never vanish at integers g >= 0, and raise when
no such pivot can be found rather than report a rank that might drop.
"""

from __future__ import annotations

from fractions import Fraction

from .ring import ParamPoly


def _poly_rows(rows):
    return [[ParamPoly.coerce(x) for x in row] for row in rows]


def _check_rect(rows):
    if rows and any(len(r) != len(rows[0]) for r in rows):
        raise ValueError("ragged matrix")


def rank_fraction(rows):
    """Rank of a matrix with Fraction (or int) entries."""
    _check_rect(rows)
    m = [[Fraction(x) for x in row] for row in rows]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    rank = 0
    row = 0
    for col in range(ncols):
        pivot = next((i for i in range(row, nrows) if m[i][col] != 0), None)
        if pivot is None:
            continue
        m[row], m[pivot] = m[pivot], m[row]
        inv = m[row][col]
        for i in range(row + 1, nrows):
            if m[i][col] == 0:
                continue
            f = m[i][col] / inv
            for j in range(col, ncols):
                m[i][j] -= f * m[row][j]
        row += 1
        rank += 1
        if row == nrows:
            break
    return rank


def bareiss_det(rows):
    """Determinant of a square ParamPoly matrix, fraction-free."""
    _check_rect(rows)
    m = _poly_rows(rows)
    n = len(m)
    if n == 0:
        return ParamPoly.const(1)
    if any(len(r) != n for r in m):
        raise ValueError("determinant needs a square matrix")
    sign = 1
    prev = ParamPoly.const(1)
    for k in range(n - 1):
        if m[k][k].is_zero():
            swap = next((i for i in range(k + 1, n)
                         if not m[i][k].is_zero()), None)
            if swap is None:
                return ParamPoly()
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[k][k] * m[i][j]
                           - m[i][k] * m[k][j]).exact_div(prev)
            m[i][k] = ParamPoly()
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return -det if sign < 0 else det


def solve_cramer(rows, rhs):
    """Solve A x = b symbolically; returns (numerators, denominator).

    x_j = numerators[j] / denominator as rational functions of g.  The
    solution is re-verified exactly: A . numerators == denominator * b.
    Raises ValueError when det(A) is the zero polynomial.
    """
    a = _poly_rows(rows)
    b = [ParamPoly.coerce(x) for x in rhs]
    n = len(a)
    if len(b) != n or any(len(r) != n for r in a):
        raise ValueError("need square A and matching b")
    den = bareiss_det(a)
    if den.is_zero():
        raise ValueError("singular system: determinant is identically zero")
    nums = []
    for j in range(n):
        col_swapped = [[b[i] if jj == j else a[i][jj] for jj in range(n)]
                       for i in range(n)]
        nums.append(bareiss_det(col_swapped))
    for i in range(n):
        lhs = ParamPoly()
        for j in range(n):
            lhs = lhs + a[i][j] * nums[j]
        if lhs != den * b[i]:
            raise AssertionError("Cramer verification failed")
    return nums, den


def param_rank(rows):
    """Rank of a ParamPoly matrix, valid at every integer g >= 0.

    Fraction-free elimination choosing only pivots that provably never
    vanish at a nonnegative integer (no such root exists).  When nonzero
    entries remain but none can serve as a certified pivot, raises
    ValueError rather than guess; callers can fall back to sampling.
    """
    _check_rect(rows)
    m = _poly_rows(rows)
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    rank = 0
    top = 0
    done_cols = set()
    while top < nrows:
        pick = None
        for col in range(ncols):
            if col in done_cols:
                continue
            for i in range(top, nrows):
                entry = m[i][col]
                if entry.is_zero():
                    continue
                if entry.nonvanishing_for_nonneg_g():
                    pick = (i, col)
                    break
            if pick:
                break
        if pick is None:
            leftovers = [m[i][col] for i in range(top, nrows)
                         for col in range(ncols) if not m[i][col].is_zero()]
            if leftovers:
                raise ValueError(
                    "no certified pivot among remaining entries: "
                    + ", ".join(str(p) for p in leftovers[:4]))
            break
        i, col = pick
        m[top], m[i] = m[i], m[top]
        piv = m[top][col]
        for r in range(top + 1, nrows):
            if m[r][col].is_zero():
                continue
            f = m[r][col]
            for c in range(ncols):
                m[r][c] = piv * m[r][c] - f * m[top][c]
        done_cols.add(col)
        rank += 1
        top += 1
    return rank


def rank_at_samples(rows, g_values):
    """dict g -> rank of the matrix with g specialized to each sample."""
    _check_rect(rows)
    m = _poly_rows(rows)
    out = {}
    for gv in g_values:
        out[gv] = rank_fraction([[p(gv) for p in row] for row in m])
    return out
