"""Exact integer/rational linear algebra helpers.

Everything here works over Python ints and fractions.Fraction; no floats.
Dimensions are desk scale (n <= 8ish) so plain O(n^3) algorithms are fine.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


def vec_gcd(v):
    """gcd of the entries of an integer vector (nonnegative; 0 for zero vector)."""
    g = 0
    for x in v:
        g = gcd(g, abs(int(x)))
    return g


def primitive(v):
    """Scale an integer vector to a primitive one (gcd 1), preserving direction."""
    g = vec_gcd(v)
    if g == 0:
        raise ValueError("zero vector has no primitive representative")
    return tuple(int(x) // g for x in v)


def rational_to_primitive(v):
    """Clear denominators of a rational vector and reduce to a primitive integer vector."""
    fracs = [Fraction(x) for x in v]
    den = 1
    for f in fracs:
        den = den * f.denominator // gcd(den, f.denominator)
    ints = [int(f * den) for f in fracs]
    return primitive(ints)


def dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def vadd(u, v):
    return tuple(a + b for a, b in zip(u, v))


def vsub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def vscale(c, v):
    return tuple(c * a for a in v)


def bareiss_det(rows):
    """Exact determinant of a square integer matrix (Bareiss fraction-free)."""
    a = [list(map(int, r)) for r in rows]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def frac_det(rows):
    """Determinant of a square matrix with rational entries."""
    fracs = [[Fraction(x) for x in r] for r in rows]
    den = 1
    for r in fracs:
        for x in r:
            den = den * x.denominator // gcd(den, x.denominator)
    ints = [[int(x * den) for x in r] for r in fracs]
    n = len(rows)
    return Fraction(bareiss_det(ints), den**n)


def mat_rank(rows):
    """Rank of a matrix with integer/rational entries (exact)."""
    a = [[Fraction(x) for x in r] for r in rows]
    if not a:
        return 0
    m, n = len(a), len(a[0])
    rank = 0
    col = 0
    while rank < m and col < n:
        piv = None
        for i in range(rank, m):
            if a[i][col] != 0:
                piv = i
                break
        if piv is None:
            col += 1
            continue
        a[rank], a[piv] = a[piv], a[rank]
        pv = a[rank][col]
        for i in range(rank + 1, m):
            if a[i][col] != 0:
                f = a[i][col] / pv
                for j in range(col, n):
                    a[i][j] -= f * a[rank][j]
        rank += 1
        col += 1
    return rank


def solve_linear(a_rows, b):
    """Solve A x = b exactly (A square nonsingular, rational entries)."""
    n = len(a_rows)
    a = [[Fraction(x) for x in row] + [Fraction(b[i])] for i, row in enumerate(a_rows)]
    for k in range(n):
        piv = None
        for i in range(k, n):
            if a[i][k] != 0:
                piv = i
                break
        if piv is None:
            raise ValueError("singular matrix")
        a[k], a[piv] = a[piv], a[k]
        pv = a[k][k]
        for j in range(k, n + 1):
            a[k][j] /= pv
        for i in range(n):
            if i != k and a[i][k] != 0:
                f = a[i][k]
                for j in range(k, n + 1):
                    a[i][j] -= f * a[k][j]
    return tuple(a[i][n] for i in range(n))


def solve_linear_system(a_rows, b):
    """Solve a general (possibly rectangular) system A x = b exactly.

    Returns (particular solution, basis of the null space) or None if
    inconsistent. Entries are Fractions.
    """
    if not a_rows:
        return (), []
    m, n = len(a_rows), len(a_rows[0])
    a = [[Fraction(x) for x in row] + [Fraction(b[i])] for i, row in enumerate(a_rows)]
    pivots = []
    r = 0
    for col in range(n):
        piv = None
        for i in range(r, m):
            if a[i][col] != 0:
                piv = i
                break
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        pv = a[r][col]
        for j in range(col, n + 1):
            a[r][j] /= pv
        for i in range(m):
            if i != r and a[i][col] != 0:
                f = a[i][col]
                for j in range(col, n + 1):
                    a[i][j] -= f * a[r][j]
        pivots.append(col)
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if a[i][n] != 0:
            return None
    x = [Fraction(0)] * n
    for i, col in enumerate(pivots):
        x[col] = a[i][n]
    free_cols = [c for c in range(n) if c not in pivots]
    null_basis = []
    for fc in free_cols:
        v = [Fraction(0)] * n
        v[fc] = Fraction(1)
        for i, col in enumerate(pivots):
            v[col] = -a[i][fc]
        null_basis.append(tuple(v))
    return tuple(x), null_basis


def mat_inverse(a_rows):
    """Exact inverse of a square rational matrix as Fraction rows."""
    n = len(a_rows)
    cols = []
    for j in range(n):
        e = [Fraction(1) if i == j else Fraction(0) for i in range(n)]
        cols.append(solve_linear(a_rows, e))
    return [tuple(cols[j][i] for j in range(n)) for i in range(n)]


def mat_vec(a_rows, v):
    return tuple(dot(row, v) for row in a_rows)


def mat_mul(a_rows, b_rows):
    bt = list(zip(*b_rows))
    return [tuple(dot(r, c) for c in bt) for r in a_rows]


def complement_vector(v):
    """Integer vector w with <w, v> = 1 for a primitive integer vector v.

    Multi-component extended gcd: combines coordinates pairwise.
    """
    v = [int(x) for x in v]
    n = len(v)
    # running gcd g of v[0..i] together with coefficients w[0..i] s.t. sum w*v = g
    w = [0] * n
    g = 0
    for i, x in enumerate(v):
        if g == 0:
            if x != 0:
                g = abs(x)
                w[i] = 1 if x > 0 else -1
            continue
        if x == 0:
            continue
        # extended gcd of (g, x)
        old_r, r = g, x
        old_s, s = 1, 0
        old_t, t = 0, 1
        while r != 0:
            q = old_r // r
            old_r, r = r, old_r - q * r
            old_s, s = s, old_s - q * s
            old_t, t = t, old_t - q * t
        if old_r < 0:
            old_r, old_s, old_t = -old_r, -old_s, -old_t
        for j in range(i):
            w[j] *= old_s
        w[i] = old_t
        g = old_r
    if g != 1:
        raise ValueError("vector is not primitive: gcd=%d" % g)
    return tuple(w)


def extended_gcd(a, b):
    """(g, s, t) with s*a + t*b = g = gcd(a, b), g >= 0."""
    old_r, r = int(a), int(b)
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def lattice_basis(rows):
    """Basis of the lattice generated by integer row vectors (row echelon
    via unimodular row operations; no scaling, so the lattice is preserved)."""
    work = [list(map(int, r)) for r in rows if any(r)]
    if not work:
        return []
    ncols = len(work[0])
    r = 0
    for col in range(ncols):
        idx = [i for i in range(r, len(work)) if work[i][col] != 0]
        if not idx:
            continue
        i0 = idx[0]
        for i in idx[1:]:
            a, b = work[i0][col], work[i][col]
            g, s, t = extended_gcd(a, b)
            u, v = -(b // g), a // g
            new0 = [s * x + t * y for x, y in zip(work[i0], work[i])]
            newi = [u * x + v * y for x, y in zip(work[i0], work[i])]
            work[i0], work[i] = new0, newi
        work[r], work[i0] = work[i0], work[r]
        r += 1
    return [tuple(row) for row in work[:r]]


def integer_kernel_basis(a_rows, n):
    """Basis of the lattice {x in Z^n : <a, x> = 0 for all rows a}."""
    basis = [tuple(1 if i == j else 0 for i in range(n)) for j in range(n)]
    for a in a_rows:
        cur = [sum(int(a[c]) * b[c] for c in range(n)) for b in basis]
        if all(x == 0 for x in cur):
            continue
        p = primitive(cur)
        w = complement_vector(p)
        # kernel of <p, y> = 0 in current coords: spanned by e_i - p_i * w
        r = len(basis)
        gens = []
        for i in range(r):
            gens.append(tuple((1 if i == j else 0) - p[i] * w[j] for j in range(r)))
        kern = lattice_basis(gens)
        basis = [tuple(sum(k[i] * basis[i][c] for i in range(r)) for c in range(n))
                 for k in kern]
    return basis


def gcd_of_maximal_minors(rows):
    """gcd of all d x d minors of a d x n integer matrix (rows independent).

    This is the lattice-normalized volume factor of the parallelepiped the
    rows span, relative to the induced lattice of their span.
    """
    from itertools import combinations

    d = len(rows)
    n = len(rows[0])
    g = 0
    for cols in combinations(range(n), d):
        sub = [[rows[i][c] for c in cols] for i in range(d)]
        g = gcd(g, abs(bareiss_det(sub)))
        if g == 1:
            return 1
    if g == 0:
        raise ValueError("rows are linearly dependent")
    return g


def normalized_simplex_volume(points):
    """Lattice-normalized volume of a d-simplex given by d+1 integer points.

    Equals the Euclidean volume in the simplex's own affine lattice times d!;
    computed as gcd-of-maximal-minors of the edge matrix divided out... more
    precisely it IS |edge matrix| measured against the induced lattice:
    gcd of the d x d minors gives the index factor, and the full normalized
    volume is |det| of edges expressed in a lattice basis of the span, which
    equals gcd of maximal minors when d < n and |det| when d = n.
    """
    p0 = points[0]
    edges = [tuple(int(q[i]) - int(p0[i]) for i in range(len(p0))) for q in points[1:]]
    d = len(edges)
    n = len(p0)
    if d == n:
        return abs(bareiss_det(edges))
    return gcd_of_maximal_minors(edges)


def affine_rank(points):
    """Dimension of the affine hull of a point set."""
    if len(points) <= 1:
        return 0
    p0 = points[0]
    rows = [[Fraction(q[i]) - Fraction(p0[i]) for i in range(len(p0))] for q in points[1:]]
    return mat_rank(rows)
