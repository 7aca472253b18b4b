"""Exact linear algebra on scalar matrices (lists of rows).

Determinants use fraction-free Bareiss elimination on a denominator-cleared
integer copy; solves and nullspaces use straightforward exact Gaussian
elimination, which is ample at the problem sizes in scope.  Float inputs fall
back to partially pivoted elimination with an absolute zero threshold.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .field import is_zero


def _is_float_matrix(rows) -> bool:
    return any(isinstance(v, float) for row in rows for v in row)


def identity(n):
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def transpose(rows):
    return [list(col) for col in zip(*rows)]


def matmul(a, b):
    n, k, m = len(a), len(b), len(b[0])
    return [[sum(a[i][t] * b[t][j] for t in range(k)) for j in range(m)] for i in range(n)]


def matvec(a, v):
    return [sum(row[j] * v[j] for j in range(len(v))) for row in a]


def vec_scale(v, s):
    return [x * s for x in v]


def vec_sub(u, v):
    return [a - b for a, b in zip(u, v)]


def dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def det(rows):
    """Determinant; Bareiss over cleared integers in exact mode."""
    n = len(rows)
    if n == 0:
        return Fraction(1)
    if _is_float_matrix(rows):
        return _det_float(rows)
    scale = Fraction(1)
    m = []
    for row in rows:
        denom = 1
        for v in row:
            f = Fraction(v)
            denom = denom * f.denominator // gcd(denom, f.denominator)
        scale *= denom
        m.append([int(Fraction(v) * denom) for v in row])
    prev = 1
    sign = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k] != 0:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return Fraction(sign * m[n - 1][n - 1]) / scale


def _det_float(rows):
    n = len(rows)
    m = [list(map(float, row)) for row in rows]
    out = 1.0
    for k in range(n):
        piv, pv = k, abs(m[k][k])
        for r in range(k + 1, n):
            if abs(m[r][k]) > pv:
                piv, pv = r, abs(m[r][k])
        if pv == 0.0:
            return 0.0
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            out = -out
        out *= m[k][k]
        inv = 1.0 / m[k][k]
        for i in range(k + 1, n):
            f = m[i][k] * inv
            for j in range(k, n):
                m[i][j] -= f * m[k][j]
    return out


def _eliminate(rows):
    """Row echelon form with pivot column list; mutates a copy."""
    m = [list(r) for r in rows]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    if _is_float_matrix(m):
        # scale rows so the absolute zero threshold acts relatively
        for i in range(nrows):
            scale = max((abs(float(v)) for v in m[i]), default=0.0)
            if scale > 0.0:
                m[i] = [float(v) / scale for v in m[i]]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = None
        if _is_float_matrix(m):
            best = 0.0
            for i in range(r, nrows):
                if abs(m[i][c]) > best and not is_zero(m[i][c]):
                    piv, best = i, abs(m[i][c])
        else:
            for i in range(r, nrows):
                if m[i][c] != 0:
                    piv = i
                    break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c] if not isinstance(m[r][c], float) else 1.0 / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for i in range(nrows):
            if i != r and not is_zero(m[i][c]):
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return m, pivots


def rank(rows) -> int:
    if not rows:
        return 0
    return len(_eliminate(rows)[1])


def nullspace(rows):
    """Basis of the right null space, one vector per free column."""
    if not rows:
        return []
    ncols = len(rows[0])
    m, pivots = _eliminate(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols if not _is_float_matrix(rows) else [0.0] * ncols
        v[fc] = Fraction(1) if not _is_float_matrix(rows) else 1.0
        for r, pc in enumerate(pivots):
            v[pc] = -m[r][fc]
        basis.append(v)
    return basis


def left_nullspace(rows):
    return nullspace(transpose(rows))


def solve(rows, rhs):
    """One solution of A x = b, or None when inconsistent."""
    n = len(rows)
    ncols = len(rows[0])
    aug = [list(rows[i]) + [rhs[i]] for i in range(n)]
    m, pivots = _eliminate(aug)
    for r in range(len(pivots), n):
        if not is_zero(m[r][ncols]):
            return None
    if pivots and pivots[-1] == ncols:
        return None
    x = [Fraction(0)] * ncols if not _is_float_matrix(rows) else [0.0] * ncols
    for r, pc in enumerate(pivots):
        x[pc] = m[r][ncols]
    return x


def inverse(rows):
    n = len(rows)
    aug = [list(rows[i]) + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    m, pivots = _eliminate(aug)
    if pivots[:n] != list(range(n)):
        return None
    return [row[n:] for row in m[:n]]
