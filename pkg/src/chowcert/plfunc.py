"""Piecewise-linear convex functions (max of affine pieces): exact
subdivision into linearity cells, exact integration (interior and boundary),
lower convex envelopes, and the affine-minorant norm.

Integration rule: on a simplex where the function is affine, the integral is
volume * (average of vertex values) — exact, no quadrature error.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .hull import NotFullDimensional, convex_hull
from .linalg import complement_vector, frac_det, solve_linear_system, vsub


@dataclass(frozen=True)
class AffinePiece:
    grad: tuple
    const: Fraction

    def __call__(self, x):
        return sum(Fraction(g) * Fraction(v) for g, v in zip(self.grad, x)) + self.const


class PLConvexFunction:
    """f(x) = max over pieces (affine). Convex by construction."""

    def __init__(self, pieces):
        uniq = []
        seen = set()
        for p in pieces:
            key = (tuple(Fraction(g) for g in p.grad), Fraction(p.const))
            if key not in seen:
                seen.add(key)
                uniq.append(AffinePiece(key[0], key[1]))
        if not uniq:
            raise ValueError("need at least one affine piece")
        self.pieces = tuple(uniq)

    def __call__(self, x):
        return max(p(x) for p in self.pieces)

    def shifted(self, delta):
        """f + delta (constant)."""
        return PLConvexFunction(
            [AffinePiece(p.grad, p.const + Fraction(delta)) for p in self.pieces])

    def is_affine_on(self, vertices):
        """True if f agrees with a single affine function at all given points
        (hence on their hull, f being convex and the points spanning it)."""
        for p in self.pieces:
            if all(p(v) == self(v) for v in vertices):
                return True
        return False


def from_lattice_values_affine(points, values):
    """Exact affine interpolation through (p, values[p]) or None."""
    n = len(points[0])
    rows = [[Fraction(x) for x in p] + [Fraction(1)] for p in points]
    rhs = [Fraction(values[i]) for i in range(len(points))]
    sol = solve_linear_system(rows, rhs)
    if sol is None:
        return None
    x, null = sol
    if null:
        # underdetermined: points not full dimensional; pick the particular
        pass
    return AffinePiece(tuple(x[:n]), x[n])


# -- simplex splitting -------------------------------------------------------


def split_simplex_by_hyperplane(simplex, func):
    """Split a simplex by the zero set of an affine function.

    simplex: tuple of rational points; func: callable point -> Fraction.
    Returns a list of simplices with pairwise-disjoint interiors whose union
    is the simplex, each lying entirely in {func >= 0} or {func <= 0}.
    """
    vals = [Fraction(func(v)) for v in simplex]
    if all(v >= 0 for v in vals) or all(v <= 0 for v in vals):
        return [tuple(simplex)]
    # find a crossing edge (u positive, w negative)
    for i, vi in enumerate(vals):
        if vi > 0:
            for j, vj in enumerate(vals):
                if vj < 0:
                    t = vi / (vi - vj)  # point u + t (w - u) has func = 0
                    mid = tuple(
                        Fraction(simplex[i][c]) +
                        t * (Fraction(simplex[j][c]) - Fraction(simplex[i][c]))
                        for c in range(len(simplex[i])))
                    s1 = tuple(mid if k == i else simplex[k] for k in range(len(simplex)))
                    s2 = tuple(mid if k == j else simplex[k] for k in range(len(simplex)))
                    return (split_simplex_by_hyperplane(s1, func) +
                            split_simplex_by_hyperplane(s2, func))
    raise AssertionError("unreachable")


def resolve_cells(simplices, pieces):
    """Subdivide simplices until one piece dominates each; returns a list of
    (simplex, piece) with the dominating piece."""
    out = []
    stack = [tuple(tuple(Fraction(x) for x in v) for v in s) for s in simplices]
    pieces = list(pieces)
    while stack:
        s = stack.pop()
        # drop pieces dominated by another piece at every vertex
        vals = [[p(v) for v in s] for p in pieces]
        alive = list(range(len(pieces)))
        filtered = []
        for i in alive:
            dominated = False
            for j in alive:
                if i == j:
                    continue
                if all(vals[j][k] >= vals[i][k] for k in range(len(s))) and (
                        vals[j] != vals[i] or j < i):
                    dominated = True
                    break
            if not dominated:
                filtered.append(i)
        if len(filtered) == 1:
            out.append((s, pieces[filtered[0]]))
            continue
        # find a strictly mixed pair and split on their difference
        split_done = False
        for ii in range(len(filtered)):
            for jj in range(ii + 1, len(filtered)):
                i, j = filtered[ii], filtered[jj]
                d = [vals[i][k] - vals[j][k] for k in range(len(s))]
                if any(x > 0 for x in d) and any(x < 0 for x in d):
                    diff = AffinePiece(
                        tuple(a - b for a, b in zip(pieces[i].grad, pieces[j].grad)),
                        pieces[i].const - pieces[j].const)
                    for sub in split_simplex_by_hyperplane(s, diff):
                        if _simplex_degenerate(sub):
                            continue
                        stack.append(sub)
                    split_done = True
                    break
            if split_done:
                break
        if not split_done:
            # all remaining pieces agree at every vertex -> any one works
            out.append((s, pieces[filtered[0]]))
    return out


def _simplex_degenerate(s):
    n_pts = len(s)
    base = s[0]
    rows = [[Fraction(v[c]) - Fraction(base[c]) for c in range(len(base))]
            for v in s[1:]]
    from .linalg import mat_rank

    return mat_rank(rows) < n_pts - 1


# -- exact integration -------------------------------------------------------


def _factorial(n):
    f = 1
    for i in range(2, n + 1):
        f *= i
    return f


def simplex_volume(s):
    n = len(s) - 1
    edges = [tuple(Fraction(v[c]) - Fraction(s[0][c]) for c in range(len(s[0])))
             for v in s[1:]]
    return abs(frac_det(edges)) / _factorial(n)


def facet_simplex_sigma_volume(s, normal):
    """sigma-measure of an (n-1)-simplex lying in a facet hyperplane with
    primitive inward/outward normal."""
    n = len(s[0])
    if n == 1:
        return Fraction(1)
    w = complement_vector(normal)
    rows = [tuple(Fraction(v[c]) - Fraction(s[0][c]) for c in range(n))
            for v in s[1:]]
    rows = list(rows) + [tuple(Fraction(x) for x in w)]
    return abs(frac_det(rows)) / _factorial(n - 1)


def integrate_interior(f, poly, k=1):
    """Exact integral of f over k*poly."""
    simplices = [tuple(tuple(Fraction(k) * Fraction(x) for x in v) for v in s)
                 for s in poly._interior_simplices]
    cells = resolve_cells(simplices, f.pieces)
    total = Fraction(0)
    for s, piece in cells:
        vol = simplex_volume(s)
        avg = sum(piece(v) for v in s) / len(s)
        total += vol * avg
    return total


def integrate_boundary(f, poly, k=1):
    """Exact integral of f over the boundary of k*poly w.r.t. sigma."""
    n = poly.dim
    total = Fraction(0)
    if n == 1:
        for v in poly.vertices:
            total += f(tuple(Fraction(k) * x for x in v))
        return total
    for fi, facet in enumerate(poly.facets):
        simplices = [
            tuple(tuple(Fraction(k) * Fraction(x) for x in v) for v in s)
            for s in poly.facet_simplices[fi]]
        cells = resolve_cells(simplices, f.pieces)
        for s, piece in cells:
            svol = facet_simplex_sigma_volume(s, facet.normal)
            avg = sum(piece(v) for v in s) / len(s)
            total += svol * avg
    return total


def subdivision_vertices(f, poly, k=1):
    """Vertices of the linearity subdivision of f over k*poly (the min of f
    over the polytope is attained at one of these)."""
    simplices = [tuple(tuple(Fraction(k) * Fraction(x) for x in v) for v in s)
                 for s in poly._interior_simplices]
    cells = resolve_cells(simplices, f.pieces)
    verts = set()
    for s, _ in cells:
        verts.update(s)
    return sorted(verts)


def min_over(f, poly, k=1):
    return min(f(v) for v in subdivision_vertices(f, poly, k))


def normalize(f, poly, k=1):
    """Shift f so its minimum over k*poly is 0."""
    return f.shifted(-min_over(f, poly, k))


# -- envelope ----------------------------------------------------------------


class HullDegeneracy(RuntimeError):
    pass


def envelope_from_values(poly, k, values):
    """Largest convex function with f(p) <= values[p] at all lattice points
    of k*poly (the lower convex envelope of the lifted points)."""
    pts = sorted(values.keys())
    expected = poly.lattice_points(k)
    if sorted(map(tuple, pts)) != [tuple(p) for p in expected]:
        raise ValueError("values must be given on all lattice points of the dilation")
    lifted = [tuple(p) + (Fraction(values[p]),) for p in pts]
    n = poly.dim
    try:
        res = convex_hull(lifted)
    except NotFullDimensional:
        piece = from_lattice_values_affine(pts, [values[p] for p in pts])
        if piece is None:
            raise HullDegeneracy("degenerate lift without affine fit")
        return PLConvexFunction([piece])
    pieces = []
    for (normal, offset) in res.facets:
        # outward <u, (x,t)> <= c; lower facets have u_t < 0:
        # t >= (c - <u_x, x>)/u_t ... dividing by negative u_t flips:
        ut = Fraction(normal[n])
        if ut >= 0:
            continue
        grad = tuple(-Fraction(normal[j]) / ut for j in range(n))
        const = Fraction(offset) / ut
        pieces.append(AffinePiece(grad, const))
    if not pieces:
        raise HullDegeneracy("no lower facets found")
    return PLConvexFunction(pieces)


def envelope_lp_value(points, values, x0):
    """LP oracle: min sum(lambda * v) over convex combinations of `points`
    equal to x0. Exact reference for the hull-based envelope."""
    from .lp import solve_lp

    n = len(points[0])
    m = len(points)
    A_eq = [[Fraction(points[j][c]) for j in range(m)] for c in range(n)]
    A_eq.append([Fraction(1)] * m)
    b_eq = [Fraction(x) for x in x0] + [Fraction(1)]
    c = [Fraction(values[j]) for j in range(m)]
    val, _ = solve_lp(c, A_eq=A_eq, b_eq=b_eq, nonneg=[True] * m)
    return val


# -- norm --------------------------------------------------------------------


def norm_delta(f, poly):
    """Distance of f from the affine functions in the integral sense:
    norm = int f - max{ int ell : ell affine, ell <= f on the polytope }.

    The constraint set is finite: ell <= f holds everywhere iff it holds at
    the vertices of the linearity subdivision. Exact rational LP.
    """
    from .lp import solve_lp

    n = poly.dim
    verts = subdivision_vertices(f, poly, 1)
    V = poly.euclidean_volume
    m = poly.moment
    # variables: grad (n) + const, free; maximize grad.m + const*V
    c = [-x for x in m] + [-V]
    A_ub = []
    b_ub = []
    for v in verts:
        A_ub.append([Fraction(x) for x in v] + [Fraction(1)])
        b_ub.append(f(v))
    val, _ = solve_lp(c, A_ub=A_ub, b_ub=b_ub)
    best_int = -val
    total = integrate_interior(f, poly, 1)
    return total - best_int
