"""Exact linear algebra on small rational matrices.

Everything here is sized for the ambient dimensions the rest of the
library supports (1 to 3) plus the occasional (n)x(n) moment system.
Determinants and solves clear denominators first and then work on
integers (fraction-free elimination), so no intermediate rounding can
occur; results come back as ``Fraction``.
"""

from fractions import Fraction
from math import gcd, lcm


def dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def vsub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def vadd(u, v):
    return tuple(a + b for a, b in zip(u, v))


def scale(u, s):
    return tuple(s * a for a in u)


def clear_row_denominators(row):
    """Scale a rational row to integers; returns the integer row."""
    mult = 1
    for entry in row:
        if isinstance(entry, Fraction):
            mult = lcm(mult, entry.denominator)
    return [int(entry * mult) for entry in row]


def det_int(rows):
    """Determinant of a small integer matrix (Bareiss for n > 3)."""
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    if n == 3:
        a, b, c = rows[0]
        d, e, f = rows[1]
        g, h, i = rows[2]
        return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)
    m = [list(r) for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k] != 0:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for r in range(k + 1, n):
            for c in range(k + 1, n):
                m[r][c] = (m[r][c] * m[k][k] - m[r][k] * m[k][c]) // prev
            m[r][k] = 0
        prev = m[k][k]
    return sign * m[-1][-1]


def det_fraction(rows):
    """Determinant of a rational matrix, exact."""
    n = len(rows)
    scaled = []
    denom = 1
    for row in rows:
        mult = 1
        for entry in row:
            if isinstance(entry, Fraction):
                mult = lcm(mult, entry.denominator)
        scaled.append([int(entry * mult) for entry in row])
        denom *= mult
    return Fraction(det_int(scaled), denom)


def solve(rows, rhs):
    """Solve a square rational system exactly.

    Returns a tuple of ``Fraction`` or None when the matrix is singular.
    Rows are scaled to integers and the solve runs on integer
    determinants (Cramer), which keeps the elimination fraction-free.
    """
    n = len(rows)
    mat = []
    vec = []
    for row, b in zip(rows, rhs):
        ints = clear_row_denominators(list(row) + [b])
        mat.append(ints[:-1])
        vec.append(ints[-1])
    d = det_int(mat)
    if d == 0:
        return None
    sol = []
    for j in range(n):
        cols = [
            [mat[i][k] if k != j else vec[i] for k in range(n)]
            for i in range(n)
        ]
        sol.append(Fraction(det_int(cols), d))
    return tuple(sol)


def rank(rows):
    """Rank of a rational matrix by exact Gaussian elimination."""
    m = [[Fraction(x) for x in row] for row in rows]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][c]
        for i in range(r + 1, nrows):
            if m[i][c] != 0:
                f = m[i][c] * inv
                for k in range(c, ncols):
                    m[i][k] -= f * m[r][k]
        r += 1
        if r == nrows:
            break
    return r


def cross_generalized(rows, n):
    """Vector orthogonal to n-1 row vectors in R^n via signed minors.

    For n = 2 this rotates the single row by a quarter turn, for n = 3 it
    is the cross product.  Entries inherit the scalar type of the input
    (integers stay integers).  Returns the zero vector when the rows are
    dependent.
    """
    if len(rows) != n - 1:
        raise ValueError("need exactly n-1 rows")
    if n == 1:
        return (1,)
    out = []
    for j in range(n):
        minor = [[row[k] for k in range(n) if k != j] for row in rows]
        d = det_fraction(minor) if _has_fraction(minor) else det_int(minor)
        out.append(d if j % 2 == 0 else -d)
    return tuple(out)


def _has_fraction(rows):
    return any(isinstance(x, Fraction) and x.denominator != 1 for row in rows for x in row)


def primitivize(vec):
    """Integer primitive vector parallel to a rational vector.

    Returns ``(prim, s)`` with ``prim = s * vec`` componentwise, ``s`` a
    positive rational.  Raises ValueError on the zero vector.
    """
    mult = 1
    for entry in vec:
        entry = Fraction(entry)
        mult = lcm(mult, entry.denominator)
    ints = [int(Fraction(entry) * mult) for entry in vec]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    if g == 0:
        raise ValueError("zero vector has no primitive form")
    return tuple(x // g for x in ints), Fraction(mult, g)


def affine_rank(points):
    """Dimension of the affine hull of a point collection."""
    if len(points) <= 1:
        return 0
    base = points[0]
    return rank([vsub(p, base) for p in points[1:]])
