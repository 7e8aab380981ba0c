"""Exact rational feasibility problems on cones and conewise linear functions.

The linear programs are tiny (a handful of variables per cone) and are
solved exactly by sympy's rational simplex.  Strict inequalities are
handled by maximising a slack variable t and asking for a positive
optimum.
"""

from __future__ import annotations

from fractions import Fraction

from sympy import Matrix, Rational
from sympy.solvers.simplex import InfeasibleLPError, UnboundedLPError, linprog

from . import linalg


def _rat(x):
    f = Fraction(x)
    return Rational(f.numerator, f.denominator)


def solve_lp(c, a_ub, b_ub, a_eq, b_eq, bounds):
    """Exact minimisation of c.x; returns (value, x) or None if infeasible.

    Thin wrapper around sympy's simplex with Fraction in/out, free
    variables by default.
    """
    n = len(c)

    def matrix(rows):
        return Matrix(len(rows), n, [_rat(v) for row in rows for v in row])

    def column(vals):
        return Matrix(len(vals), 1, [_rat(v) for v in vals])

    a_ub = list(a_ub)
    b_ub = list(b_ub)
    if not a_ub:
        # sympy's linprog dislikes empty inequality blocks
        a_ub = [[0] * n]
        b_ub = [0]
    kw = {"A": matrix(a_ub), "b": column(b_ub)}
    if a_eq:
        kw["A_eq"] = matrix(a_eq)
        kw["b_eq"] = column(b_eq)
    try:
        val, xs = linprog(column(c).T.tolist()[0], bounds=bounds, **kw)
    except InfeasibleLPError:
        return None
    val = Rational(val)
    return (
        Fraction(int(val.p), int(val.q)),
        [Fraction(int(Rational(x).p), int(Rational(x).q)) for x in xs],
    )


def cones_intersect_properly(gens_a, gens_b, common_a, common_b) -> bool:
    """True iff cone(A) and cone(B) meet exactly in their common face.

    ``common_a``/``common_b`` mark which generators belong to the
    shared face.  A violation is a point of the intersection with a
    positive coordinate on a non-common generator; by homogeneity those
    coordinates can be normalised to sum to one, giving an exact LP
    feasibility problem.  A rank shortcut settles the frequent case
    where the two linear spans already meet only along the common face.
    """
    ra = linalg.rank([list(g) for g in gens_a]) if gens_a else 0
    rb = linalg.rank([list(g) for g in gens_b]) if gens_b else 0
    rub = linalg.rank([list(g) for g in gens_a] + [list(g) for g in gens_b])
    ncommon = sum(common_a)
    if ra + rb - rub == ncommon:
        # span(A) meets span(B) in span(common); in a simplicial cone the
        # intersection with a face's span is the face itself.
        return True

    n = len(gens_a[0]) if gens_a else len(gens_b[0])
    na, nb = len(gens_a), len(gens_b)
    # variables: lambda (na), mu (nb), all >= 0
    a_eq = []
    b_eq = []
    for j in range(n):
        a_eq.append([gens_a[i][j] for i in range(na)] + [-gens_b[i][j] for i in range(nb)])
        b_eq.append(0)
    a_eq.append(
        [0 if common_a[i] else 1 for i in range(na)]
        + [0 if common_b[i] else 1 for i in range(nb)]
    )
    b_eq.append(1)
    res = solve_lp([0] * (na + nb), [], [], a_eq, b_eq, bounds=(0, None))
    return res is None


def strict_feasibility(a_eq, b_eq, a_lt, b_lt, nvars):
    """Solve ``A_eq x = b_eq`` and ``A_lt x < b_lt`` exactly.

    Returns a certificate x with all strict inequalities satisfied, or
    None.  Implemented as max t subject to ``A_lt x + t <= b_lt``,
    ``t <= 1``; the system is strictly feasible iff the optimum is
    positive.
    """
    c = [0] * nvars + [-1]  # minimise -t
    a_ub = [list(row) + [1] for row in a_lt]
    b_ub = list(b_lt)
    a_ub.append([0] * nvars + [1])
    b_ub.append(1)
    eq = [list(row) + [0] for row in a_eq]
    res = solve_lp(c, a_ub, b_ub, eq, list(b_eq), bounds=(None, None))
    if res is None:
        return None
    val, xs = res
    if -val <= 0:
        return None
    return xs[:nvars]
