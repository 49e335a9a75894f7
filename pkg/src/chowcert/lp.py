"""Exact simplex-method linear programming over the rationals.

Dense two-phase tableau simplex with Bland's rule (no cycling). Problem
sizes here are desk scale (tens of variables/constraints), so simplicity
and exactness win over sparse cleverness.

    minimize c.x   subject to  A_ub x <= b_ub,  A_eq x = b_eq,
    x_i >= 0 for i in nonneg, otherwise free.
"""

from __future__ import annotations

from fractions import Fraction


class LPError(RuntimeError):
    pass


class Infeasible(LPError):
    pass


class Unbounded(LPError):
    pass


def solve_lp(c, A_ub=None, b_ub=None, A_eq=None, b_eq=None, nonneg=None):
    """Returns (value, x) minimizing c.x. Raises Infeasible/Unbounded."""
    A_ub = A_ub or []
    b_ub = b_ub or []
    A_eq = A_eq or []
    b_eq = b_eq or []
    nvar = len(c)
    if nonneg is None:
        nonneg = [False] * nvar
    # variable mapping: nonneg -> one column; free -> x+ - x-
    cols = []  # list of (orig index, sign)
    for i in range(nvar):
        cols.append((i, 1))
        if not nonneg[i]:
            cols.append((i, -1))
    ncols = len(cols)

    def expand(row):
        return [Fraction(row[i]) * s for (i, s) in cols]

    rows = []
    rhs = []
    slack_count = len(A_ub)
    for r, row in enumerate(A_ub):
        e = expand(row) + [Fraction(1) if j == r else Fraction(0)
                           for j in range(slack_count)]
        rows.append(e)
        rhs.append(Fraction(b_ub[r]))
    for row, b in zip(A_eq, b_eq):
        e = expand(row) + [Fraction(0)] * slack_count
        rows.append(e)
        rhs.append(Fraction(b))
    m = len(rows)
    total = ncols + slack_count
    # make rhs nonnegative
    for i in range(m):
        if rhs[i] < 0:
            rows[i] = [-x for x in rows[i]]
            rhs[i] = -rhs[i]
    # phase 1: add artificials
    tableau = [rows[i] + [Fraction(1) if j == i else Fraction(0) for j in range(m)]
               + [rhs[i]] for i in range(m)]
    basis = [total + i for i in range(m)]
    width = total + m

    def pivot(tab, basis, row, col):
        pr = tab[row]
        pv = pr[col]
        tab[row] = [x / pv for x in pr]
        pr = tab[row]
        for i in range(len(tab)):
            if i != row and tab[i][col] != 0:
                f = tab[i][col]
                tab[i] = [a - f * b for a, b in zip(tab[i], pr)]
        basis[row] = col

    def run_simplex(tab, basis, obj, allowed):
        # obj: cost row (list len width+1, last = value, minimize)
        # reduced costs maintained in obj directly
        while True:
            col = None
            for j in range(len(allowed)):
                if allowed[j] and obj[j] < 0:
                    col = j
                    break  # Bland: smallest index
            if col is None:
                return obj
            # ratio test, Bland tie-break on basis index
            best = None
            for i in range(len(tab)):
                a = tab[i][col]
                if a > 0:
                    ratio = tab[i][-1] / a
                    if best is None or ratio < best[0] or (
                            ratio == best[0] and basis[i] < basis[best[1]]):
                        best = (ratio, i)
            if best is None:
                raise Unbounded("unbounded LP")
            pivot(tab, basis, best[1], col)
            f = obj[col]
            obj[:] = [a - f * b for a, b in zip(obj, tab[best[1]] + [])]

    # phase 1 objective: sum of artificials
    obj1 = [Fraction(0)] * (width + 1)
    for j in range(total, width):
        obj1[j] = Fraction(1)
    # reduce: subtract basic rows
    for i in range(m):
        obj1 = [a - b for a, b in zip(obj1, tableau[i] + [])]
    # note tableau rows have width+1 entries (incl rhs)
    allowed = [True] * width
    obj1 = run_simplex(tableau, basis, obj1, allowed)
    # obj row last entry holds -(current objective value)
    if obj1[-1] != 0:
        raise Infeasible("infeasible LP")
    # drive artificials out of basis if possible
    for i in range(m):
        if basis[i] >= total:
            for j in range(total):
                if tableau[i][j] != 0:
                    pivot(tableau, basis, i, j)
                    break
    # drop rows still basic in artificial (redundant constraints)
    keep = [i for i in range(m) if basis[i] < total]
    tableau = [tableau[i] for i in keep]
    basis = [basis[i] for i in keep]
    # phase 2
    allowed = [True] * total + [False] * m
    obj2 = [Fraction(0)] * (width + 1)
    for j, (i, s) in enumerate(cols):
        obj2[j] = Fraction(c[i]) * s
    for i in range(len(tableau)):
        bj = basis[i]
        if obj2[bj] != 0:
            f = obj2[bj]
            obj2 = [a - f * b for a, b in zip(obj2, tableau[i] + [])]
    obj2 = run_simplex(tableau, basis, obj2, allowed)
    value = -obj2[-1]
    xcols = [Fraction(0)] * width
    for i, bj in enumerate(basis):
        xcols[bj] = tableau[i][-1]
    x = [Fraction(0)] * nvar
    for j, (i, s) in enumerate(cols):
        x[i] += s * xcols[j]
    return value, tuple(x)
