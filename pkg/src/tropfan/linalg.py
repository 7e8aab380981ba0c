"""Exact linear algebra over Q and Z.

All matrices are lists of lists (row major) with ``int`` or
``fractions.Fraction`` entries.  Nothing here is asymptotically clever;
the fans we care about have a few dozen rays, so correctness and
determinism beat speed.  Ranks are computed fraction-free (Bareiss) on
integer matrices obtained by clearing denominators; kernels and solves
go through a plain reduced row echelon form with the first-nonzero
pivot rule, which makes every basis produced here reproducible.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm


# ---------------------------------------------------------------------------
# rational matrices


def mat_copy(a):
    return [list(row) for row in a]


def zeros(m, n):
    return [[Fraction(0)] * n for _ in range(m)]


def identity(n):
    return [[Fraction(1) if i == j else Fraction(0) for j in range(n)] for i in range(n)]


def transpose(a):
    if not a:
        return []
    return [list(col) for col in zip(*a)]


def mat_mul(a, b):
    if not a or not b:
        return []
    n = len(b)
    assert all(len(row) == n for row in a), "shape mismatch"
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def mat_vec(a, v):
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def vec_add(u, v):
    return [x + y for x, y in zip(u, v)]


def vec_scale(c, v):
    return [c * x for x in v]


def is_zero_matrix(a):
    return all(x == 0 for row in a for x in row)


def _clear_denominators(a):
    """Integer matrix with the same row spans as the rational matrix ``a``."""
    out = []
    for row in a:
        row = [Fraction(x) for x in row]
        den = lcm(*(x.denominator for x in row)) if row else 1
        out.append([int(x * den) for x in row])
    return out


def bareiss_rank(a):
    """Rank of an integer matrix by fraction-free Gaussian elimination."""
    m = [list(map(int, row)) for row in a]
    if not m or not m[0]:
        return 0
    rows, cols = len(m), len(m[0])
    rank = 0
    prev = 1
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(r + 1, rows):
            for j in range(c + 1, cols):
                m[i][j] = (m[r][c] * m[i][j] - m[i][c] * m[r][j]) // prev
            m[i][c] = 0
        prev = m[r][c]
        r += 1
        rank += 1
        if r == rows:
            break
    return rank


def rank(a):
    """Exact rank of a rational matrix."""
    if not a or not a[0]:
        return 0
    return bareiss_rank(_clear_denominators(a))


def rref(a):
    """Reduced row echelon form.

    Returns ``(r, pivots)`` where ``pivots`` lists the pivot column of
    each nonzero row of ``r``.  Pivot choice is the first row with a
    nonzero entry, so the output is deterministic.
    """
    m = [[Fraction(x) for x in row] for row in a]
    if not m:
        return [], []
    rows, cols = len(m), len(m[0])
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = m[r][c]
        m[r] = [x / inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m[:r] + m[r:], pivots


def row_space_basis(vectors):
    """Reduced basis of the span of ``vectors`` (rows of the rref)."""
    if not vectors:
        return []
    r, pivots = rref(vectors)
    return [r[i] for i in range(len(pivots))]


def nullspace(a):
    """Deterministic basis of ``{x : a x = 0}``, one vector per free column."""
    if not a or not a[0]:
        return []
    cols = len(a[0])
    r, pivots = rref(a)
    pivot_set = set(pivots)
    basis = []
    for free in range(cols):
        if free in pivot_set:
            continue
        v = [Fraction(0)] * cols
        v[free] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -r[i][free]
        basis.append(v)
    return basis


def solve(a, b):
    """One rational solution of ``a x = b``, or None if inconsistent."""
    if not a:
        return None if any(x != 0 for x in b) else []
    cols = len(a[0])
    aug = [list(row) + [bi] for row, bi in zip(a, b)]
    r, pivots = rref(aug)
    if cols in pivots:
        return None
    x = [Fraction(0)] * cols
    for i, p in enumerate(pivots):
        x[p] = r[i][cols]
    return x


def solve_matrix(a, b):
    """X with ``a X = b`` (columns solved independently), or None."""
    bt = transpose(b)
    cols = []
    for col in bt:
        x = solve(a, col)
        if x is None:
            return None
        cols.append(x)
    return transpose(cols)


def coords_in_basis(basis_rows, v):
    """Coordinates of ``v`` in the given row basis, or None if outside."""
    if not basis_rows:
        return [] if all(x == 0 for x in v) else None
    return solve(transpose(basis_rows), list(v))


def det(a):
    """Exact determinant (Bareiss on cleared denominators, rescaled)."""
    n = len(a)
    if n == 0:
        return Fraction(1)
    assert all(len(row) == n for row in a)
    m = [[Fraction(x) for x in row] for row in a]
    sign = 1
    prev = Fraction(1)
    for c in range(n - 1):
        piv = next((i for i in range(c, n) if m[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            sign = -sign
        for i in range(c + 1, n):
            for j in range(c + 1, n):
                m[i][j] = (m[c][c] * m[i][j] - m[i][c] * m[c][j]) / prev
            m[i][c] = Fraction(0)
        prev = m[c][c]
    return sign * m[n - 1][n - 1]


# ---------------------------------------------------------------------------
# integer lattice computations


def gcd_vector(v):
    g = 0
    for x in v:
        g = gcd(g, abs(int(x)))
    return g


def is_primitive(v):
    return gcd_vector(v) == 1


def primitive(v):
    """The primitive integer vector on the ray through ``v``."""
    g = gcd_vector(v)
    if g == 0:
        raise ValueError("zero vector has no primitive representative")
    return tuple(int(x) // g for x in v)


def hnf(a):
    """Row Hermite normal form with transform.

    Returns ``(h, u, r)`` with ``u`` unimodular, ``u a = h``, ``r`` the
    rank; ``h`` is in row echelon form with positive pivots and entries
    above each pivot reduced modulo it.
    """
    m = len(a)
    n = len(a[0]) if m else 0
    h = [[int(x) for x in row] for row in a]
    u = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    r = 0
    for c in range(n):
        while True:
            piv = None
            for i in range(r, m):
                if h[i][c] != 0 and (piv is None or abs(h[i][c]) < abs(h[piv][c])):
                    piv = i
            if piv is None:
                break
            if piv != r:
                h[r], h[piv] = h[piv], h[r]
                u[r], u[piv] = u[piv], u[r]
            clean = True
            for i in range(r + 1, m):
                if h[i][c] != 0:
                    q = h[i][c] // h[r][c]
                    h[i] = [x - q * y for x, y in zip(h[i], h[r])]
                    u[i] = [x - q * y for x, y in zip(u[i], u[r])]
                    if h[i][c] != 0:
                        clean = False
            if clean:
                break
        if r < m and h[r][c] != 0:
            if h[r][c] < 0:
                h[r] = [-x for x in h[r]]
                u[r] = [-x for x in u[r]]
            for i in range(r):
                q = h[i][c] // h[r][c]
                if q:
                    h[i] = [x - q * y for x, y in zip(h[i], h[r])]
                    u[i] = [x - q * y for x, y in zip(u[i], u[r])]
            r += 1
    return h, u, r


def lattice_index(rows):
    """Index of the row lattice inside its saturation.

    Requires the rows to be linearly independent; the index is the
    product of the Hermite pivots, and equals one exactly when the rows
    extend to a basis of Z^n.
    """
    if not rows:
        return 1
    h, _, r = hnf(rows)
    if r != len(rows):
        raise ValueError("rows are linearly dependent")
    idx = 1
    for i in range(r):
        piv = next(x for x in h[i] if x != 0)
        idx *= piv
    return idx


def left_kernel(a):
    """Basis of the saturated lattice ``{x in Z^m : x a = 0}``."""
    if not a:
        return []
    h, u, r = hnf(a)
    return [tuple(u[i]) for i in range(r, len(a))]


def integer_solve(a, b):
    """An integer solution x of ``x a = b`` (row convention), or None."""
    m = len(a)
    if m == 0:
        return [] if all(x == 0 for x in b) else None
    h, u, r = hnf(a)
    n = len(a[0])
    # back-substitute against the echelon rows of h
    y = [0] * m
    rem = list(map(int, b))
    for i in range(r):
        c = next(j for j in range(n) if h[i][j] != 0)
        if rem[c] % h[i][c] != 0:
            return None
        q = rem[c] // h[i][c]
        y[i] = q
        rem = [x - q * z for x, z in zip(rem, h[i])]
    if any(x != 0 for x in rem):
        return None
    # x = y u
    return [sum(y[i] * u[i][j] for i in range(m)) for j in range(m)]


def integer_right_inverse(a):
    """Integer R with ``a R = I`` for a k x n matrix with saturated row span.

    Returns None when no integer right inverse exists (the row lattice
    is not saturated or the rows are dependent).
    """
    k = len(a)
    if k == 0:
        return []
    at = transpose(a)
    cols = []
    for i in range(k):
        e = [1 if j == i else 0 for j in range(k)]
        x = integer_solve(at, e)  # x at = e  <=>  a x^T = e^T
        if x is None:
            return None
        cols.append(x)
    return transpose(cols)


def quotient_projection(generators, n):
    """Integer matrix of the projection N -> N / N_sigma.

    ``generators`` spans the cone sigma; the rows of the result are a
    basis of the annihilator of sigma in the dual lattice, which makes
    the map surjective onto Z^(n-k) with kernel the saturation N_sigma.
    """
    if not generators:
        return [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    cols = transpose([list(g) for g in generators])  # n x k, columns = generators
    ker = left_kernel(cols)
    return [list(v) for v in ker]
