"""Exact incremental convex hull over the rationals.

Beneath-beyond with conflict lists. Coordinates are cleared to integers up
front (per-coordinate scaling, which preserves the face lattice), so all
predicates are integer determinant signs — no epsilons anywhere.

Degenerate (coplanar) inputs are handled by the non-strict visibility
convention: a facet is "visible" from p when <u, p> >= c. With that
convention a horizon ridge never contains p in its affine hull (any facet
through such a ridge would be coplanar with p, hence visible), so the new
cone facets are always nondegenerate. Simplicial facets sharing a hyperplane
are merged at the end.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .linalg import bareiss_det, mat_rank, vec_gcd


class NotFullDimensional(ValueError):
    """Input points do not affinely span the ambient space."""


class EmptyInput(ValueError):
    pass


class _Facet:
    __slots__ = ("normal", "offset", "vertices", "neighbors", "conflicts", "alive")

    def __init__(self, normal, offset, vertices):
        self.normal = normal          # outward integer normal (not normalized)
        self.offset = offset          # <normal, x> <= offset on the hull
        self.vertices = vertices      # tuple of point indices, len n
        self.neighbors = {}           # ridge (frozenset of n-1 indices) -> facet
        self.conflicts = []           # point indices strictly outside
        self.alive = True


class HullResult:
    """Facet description of conv(points).

    facets: list of (primitive outward integer normal, integer offset) with
        <normal, x> <= offset on the hull (in the original, unscaled coords
        the normal is primitive integer and offset rational -> reduced).
    facet_simplices: parallel list; each entry is a list of point-index
        tuples (len n) forming simplices that tile the facet.
    vertex_indices: indices of input points that are extreme.
    """

    def __init__(self, points, facets, facet_simplices, vertex_indices):
        self.points = points
        self.facets = facets
        self.facet_simplices = facet_simplices
        self.vertex_indices = vertex_indices


def convex_hull(points):
    """Exact convex hull of full-dimensional rational points.

    points: list of tuples (int or Fraction entries).
    Returns HullResult with data in the ORIGINAL coordinates.
    """
    if not points:
        raise EmptyInput("no points")
    n = len(points[0])
    # clear denominators per coordinate
    scales = []
    for j in range(n):
        den = 1
        for p in points:
            d = Fraction(p[j]).denominator
            den = den * d // gcd(den, d)
        scales.append(den)
    ipts = [tuple(int(Fraction(p[j]) * scales[j]) for j in range(n)) for p in points]

    simp_facets, vert_idx = _hull_scaled(ipts)

    # merge coplanar simplicial facets; unscale normals
    merged = {}
    for f in simp_facets:
        # unscaled normal: u_j * scales[j]; offset unchanged
        raw = [f.normal[j] * scales[j] for j in range(n)]
        g = vec_gcd(raw)
        key_normal = tuple(x // g for x in raw)
        key_offset = Fraction(f.offset, g)
        key = (key_normal, key_offset)
        merged.setdefault(key, []).append(tuple(f.vertices))
    facets = []
    facet_simplices = []
    for (normal, offset), simps in sorted(merged.items()):
        facets.append((normal, offset))
        facet_simplices.append(sorted(simps))
    return HullResult(list(points), facets, facet_simplices, vert_idx)


def _initial_simplex(pts):
    n = len(pts[0])
    chosen = [0]
    rows = []
    for i in range(1, len(pts)):
        cand = [pts[i][j] - pts[chosen[0]][j] for j in range(n)]
        if mat_rank(rows + [cand]) > len(rows):
            rows.append(cand)
            chosen.append(i)
            if len(chosen) == n + 1:
                return chosen
    raise NotFullDimensional(
        "points span a %d-dimensional affine subspace of R^%d" % (len(rows), n)
    )


def _make_facet(pts, idxs, inside):
    base = pts[idxs[0]]
    n = len(base)
    rows = [[pts[i][j] - base[j] for j in range(n)] for i in idxs[1:]]
    normal = []
    for j in range(n):
        minor = [[row[c] for c in range(n) if c != j] for row in rows]
        d = bareiss_det(minor) if minor else 1
        normal.append(d if j % 2 == 0 else -d)
    offset = sum(a * b for a, b in zip(normal, base))
    # orient outward: inside point is (sum of n+1 simplex points), compare
    # against (n+1)*offset to stay in integers
    side = sum(a * b for a, b in zip(normal, inside)) - offset * inside[-1]
    if side > 0:
        normal = [-x for x in normal]
        offset = -offset
    elif side == 0:
        raise ValueError("reference point on facet hyperplane")
    return _Facet(tuple(normal), offset, tuple(idxs))


def _hull_scaled(pts):
    n = len(pts[0])
    init = _initial_simplex(pts)
    # interior reference: sum of initial simplex points, with weight n+1 —
    # stored as (sum vector..., n+1) so _make_facet can compare in integers
    ref = [sum(pts[i][j] for i in init) for j in range(n)] + [n + 1]

    facets = []
    for skip in range(n + 1):
        idxs = [init[i] for i in range(n + 1) if i != skip]
        facets.append(_make_facet(pts, idxs, ref))
    _link_neighbors(facets)

    # conflict lists: strictly-outside points only
    remaining = [i for i in range(len(pts)) if i not in set(init)]
    for i in remaining:
        for f in facets:
            if _strictly_visible(pts[i], f):
                f.conflicts.append(i)
                break

    queue = [f for f in facets if f.conflicts]
    all_facets = list(facets)
    while queue:
        f = queue.pop()
        if not f.alive or not f.conflicts:
            continue
        # furthest conflict point (max violation) for robustness/speed
        best = max(f.conflicts, key=lambda i: _violation(pts[i], f))
        p = pts[best]
        # BFS of visible facets (non-strict)
        visible = []
        seen = set()
        stack = [f]
        seen.add(id(f))
        while stack:
            g = stack.pop()
            if _visible(p, g):
                visible.append(g)
                for nb in g.neighbors.values():
                    if nb.alive and id(nb) not in seen:
                        seen.add(id(nb))
                        stack.append(nb)
        # horizon ridges: ridge of a visible facet whose neighbor is invisible
        horizon = []
        for g in visible:
            for ridge, nb in g.neighbors.items():
                if nb.alive and not _visible(p, nb):
                    horizon.append((ridge, nb))
        # orphaned conflict points
        orphans = set()
        for g in visible:
            orphans.update(g.conflicts)
            g.alive = False
            g.conflicts = []
        orphans.discard(best)
        # new facets
        new_facets = []
        for ridge, nb in horizon:
            idxs = [best] + sorted(ridge)
            nf = _make_facet(pts, idxs, ref)
            nf.neighbors[frozenset(ridge)] = nb
            nb.neighbors[frozenset(ridge)] = nf
            new_facets.append(nf)
        _link_new(new_facets, best)
        for i in orphans:
            q = pts[i]
            for nf in new_facets:
                if _strictly_visible(q, nf):
                    nf.conflicts.append(i)
                    break
        for nf in new_facets:
            all_facets.append(nf)
            if nf.conflicts:
                queue.append(nf)

    live = [f for f in all_facets if f.alive]

    # hull vertices: points on facets whose normals span rank n
    active = {}
    for f in live:
        for i in f.vertices:
            active.setdefault(i, set()).add((f.normal, f.offset))
    vert_idx = []
    for i, hps in active.items():
        normals = [hp[0] for hp in hps]
        if mat_rank(normals) == n:
            vert_idx.append(i)
    return live, sorted(vert_idx)


def _violation(p, f):
    return sum(a * b for a, b in zip(f.normal, p)) - f.offset


def _strictly_visible(p, f):
    return _violation(p, f) > 0


def _visible(p, f):
    return _violation(p, f) >= 0


def _link_neighbors(facets):
    ridge_map = {}
    for f in facets:
        vs = f.vertices
        for skip in range(len(vs)):
            ridge = frozenset(vs[:skip] + vs[skip + 1:])
            if ridge in ridge_map:
                g = ridge_map.pop(ridge)
                f.neighbors[ridge] = g
                g.neighbors[ridge] = f
            else:
                ridge_map[ridge] = f


def _link_new(new_facets, apex):
    ridge_map = {}
    for f in new_facets:
        vs = f.vertices
        for skip in range(len(vs)):
            if vs[skip] == apex:
                continue
            ridge = frozenset(vs[:skip] + vs[skip + 1:])
            if ridge in ridge_map:
                g = ridge_map.pop(ridge)
                f.neighbors[ridge] = g
                g.neighbors[ridge] = f
            else:
                ridge_map[ridge] = f
