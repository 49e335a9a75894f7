"""Triangulations of vertex cones and the standard triangulations they are
built from.

Two flavors of translation-periodic cone triangulation:

* BuiltConeTriangulation: the cone is split into unimodular sectors (either
  derived automatically from the apex region, or supplied as hint simplices);
  each sector is filled with the staircase ("alcove") triangulation of a
  dilated standard simplex pushed through the sector's unimodular matrix.
* PatternConeTriangulation: the triangulation is described by finitely many
  translate classes (a representative simplex plus nonnegative integer
  combinations of translation vectors); validated against the exact volume
  of a dilation window and for pairwise interior-disjointness.

Both expose, for each dilation k, the set of top simplices contained in the
dilated polytope and the boundary (n-1)-simplices lying on the cone facets,
together with per-point touching counts.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import ceil, floor

from .hull import convex_hull
from .linalg import (
    affine_rank,
    bareiss_det,
    integer_kernel_basis,
    mat_inverse,
    mat_vec,
    normalized_simplex_volume,
    primitive,
    rational_to_primitive,
    solve_linear,
    solve_linear_system,
    vadd,
    vsub,
)


class DimensionTooLarge(ValueError):
    pass


class InvalidHint(ValueError):
    pass


class RegionNotCovered(RuntimeError):
    """A pattern triangulation fails the volume/overlap consistency check."""


class BoundaryNotSimplicial(RuntimeError):
    pass


class NoUnimodularTriangulationFound(RuntimeError):
    pass


_MAX_DIM = 8


# -- standard triangulations --------------------------------------------------


def standard_cube_triangulation(n, basepoint=None):
    """The n! chain simplices triangulating the unit cube at `basepoint`."""
    if n > _MAX_DIM:
        raise DimensionTooLarge("dimension %d exceeds supported bound" % n)
    base = tuple(basepoint) if basepoint is not None else (0,) * n
    out = []
    for pi in itertools.permutations(range(n)):
        v = list(base)
        chain = [tuple(v)]
        for j in pi:
            v[j] += 1
            chain.append(tuple(v))
        out.append(tuple(chain))
    return out


def _weakly_decreasing(n, k):
    def rec(prefix, bound):
        if len(prefix) == n:
            yield tuple(prefix)
            return
        for c in range(bound, -1, -1):
            yield from rec(prefix + [c], c)

    if k >= 1:
        yield from rec([], k - 1)


def _staircase_to_simplex(y):
    n = len(y)
    return tuple(y[i] - (y[i + 1] if i + 1 < n else 0) for i in range(n))


_ALCOVE_CACHE = {}


def standard_simplex_triangulation(n, k):
    """Triangulation of k * (standard n-simplex) into k^n unimodular
    simplices, compatible across dilations (the simplices for k are a subset
    of those for k+1) and restricting to the same construction on faces.

    Enumerated in staircase coordinates y_i = sum_{j >= i} x_j: each simplex
    is a unit chain starting at a weakly decreasing corner, with ties in the
    corner forcing the increment order.
    """
    if n > _MAX_DIM:
        raise DimensionTooLarge("dimension %d exceeds supported bound" % n)
    key = (n, k)
    if key in _ALCOVE_CACHE:
        return _ALCOVE_CACHE[key]
    out = []
    for c in _weakly_decreasing(n, k):
        for pi in itertools.permutations(range(n)):
            pos = [0] * n
            for idx, v in enumerate(pi):
                pos[v] = idx
            if any(c[i] == c[i + 1] and pos[i] > pos[i + 1] for i in range(n - 1)):
                continue
            y = list(c)
            chain = [_staircase_to_simplex(y)]
            for j in pi:
                y[j] += 1
                chain.append(_staircase_to_simplex(y))
            out.append(tuple(chain))
    _ALCOVE_CACHE[key] = out
    return out


def touching_counts(simplices):
    """point -> number of simplices having it as a vertex.

    For unimodular (lattice-point-free) simplices this equals the number of
    simplices containing the point."""
    counts = {}
    for s in simplices:
        for v in s:
            counts[v] = counts.get(v, 0) + 1
    return counts


def simplex_contains(simplex, q):
    """Exact membership test via barycentric coordinates."""
    lam = _barycentric(simplex, q)
    return lam is not None and all(v >= 0 for v in lam)


def touching_count(q, simplices):
    """Number of simplices of the region touching q (q in S, Def-style)."""
    return sum(1 for s in simplices if simplex_contains(s, q))


# -- apex region and its unimodular triangulation -----------------------------


def _barycentric(simplex, q):
    """Barycentric coordinates of q w.r.t. a nondegenerate simplex (or None
    if q is outside its affine hull)."""
    d = len(simplex) - 1
    v0 = simplex[0]
    cols = [vsub(simplex[i + 1], v0) for i in range(d)]
    a_rows = [[cols[j][c] for j in range(d)] for c in range(len(v0))]
    sol = solve_linear_system(a_rows, list(vsub(q, v0)))
    if sol is None:
        return None
    t, null = sol
    if null:
        return None
    lam0 = 1 - sum(t)
    return (lam0,) + tuple(t)


def induced_lattice_coords(points):
    """Coordinates of integer points w.r.t. a basis of the induced lattice of
    their affine span. Returns (to_y, to_x, d): exact inverse integer charts
    and the affine dimension d."""
    n = len(points[0])
    d = affine_rank(points)
    v0 = points[0]
    if d == n:
        def to_y(p, v0=v0):
            return vsub(p, v0)

        def to_x(y, v0=v0):
            return vadd(v0, y)

        return to_y, to_x, d
    diffs = [list(vsub(p, v0)) for p in points[1:]]
    _, null = solve_linear_system(diffs, [0] * len(diffs))
    a_rows = [rational_to_primitive(v) for v in null]
    kbasis = integer_kernel_basis(a_rows, n)
    assert len(kbasis) == d

    def to_y(p):
        rel = vsub(p, v0)
        rows = [[kbasis[j][c] for j in range(d)] for c in range(n)]
        y, nul = solve_linear_system(rows, list(rel))
        assert not nul
        out = []
        for val in y:
            assert Fraction(val).denominator == 1
            out.append(int(val))
        return tuple(out)

    def to_x(y):
        return vadd(v0, tuple(sum(y[j] * kbasis[j][c] for j in range(d))
                              for c in range(n)))

    return to_y, to_x, d


def _unimodular_polytope_triangulation(points):
    """Unimodular (w.r.t. the induced lattice of the affine span) full
    triangulation of the convex hull of integer points lying in a proper
    affine subspace. Refines recursively at contained lattice points; raises
    NoUnimodularTriangulationFound if an empty simplex of volume > 1 remains.
    """
    from .polytope import build_polytope

    d = affine_rank(points)
    if d == 0:
        raise NoUnimodularTriangulationFound("region is a single point")
    to_y, to_x, d = induced_lattice_coords(points)

    ypoly = build_polytope([to_y(p) for p in points])
    lpts = ypoly.lattice_points(1)
    stack = list(ypoly._interior_simplices)
    done = []
    while stack:
        s = stack.pop()
        split_at = None
        vs = set(s)
        for q in lpts:
            if q in vs:
                continue
            lam = _barycentric(s, q)
            if lam is not None and all(v >= 0 for v in lam):
                split_at = (q, lam)
                break
        if split_at is None:
            if normalized_simplex_volume(s) != 1:
                raise NoUnimodularTriangulationFound(
                    "empty simplex of normalized volume %d in dimension %d"
                    % (normalized_simplex_volume(s), d))
            done.append(s)
            continue
        q, lam = split_at
        for i, l in enumerate(lam):
            if l > 0:
                child = tuple(q if j == i else s[j] for j in range(len(s)))
                stack.append(child)
    return [tuple(to_x(y) for y in s) for s in done]


def build_apex_sectors(cone):
    """Unimodular sector generators for a vertex cone.

    The region spanned by the apex and the primitive edge directions has an
    outer part (the faces not containing the apex); its unimodular
    triangulation, with each triangle's vertices scaled back to primitive
    ray points, gives the sectors.
    """
    n = len(cone.apex)
    gens = [tuple(g) for g in cone.generators]
    if n == 1:
        return [(g,) for g in gens]
    pts = [(0,) * n] + gens
    hull = convex_hull(pts)
    sectors = []
    for (normal, offset), simps in zip(hull.facets, hull.facet_simplices):
        if offset == 0:
            continue  # facet through the apex: part of the cone boundary
        face_pts = sorted({hull.points[i] for s in simps for i in s})
        for tri in _unimodular_polytope_triangulation(face_pts):
            sectors.extend(
                _refine_sector(tuple(primitive(v) for v in tri)))
    return sectors


def _refine_sector(gens):
    """Split a simplicial sector into unimodular subsectors by recursive
    stellar subdivision at primitive lattice points of Conv{0, generators}.
    Each split multiplies the determinant by a barycentric weight < 1, so the
    recursion terminates."""
    from .polytope import build_polytope

    n = len(gens[0])
    rows = [[gens[j][c] for j in range(n)] for c in range(n)]
    det = abs(bareiss_det(rows))
    if det == 1:
        return [gens]
    zero = (0,) * n
    region = build_polytope([zero] + [tuple(g) for g in gens])
    for q in region.lattice_points(1):
        if q == zero:
            continue
        w = primitive(q)
        if w in gens:
            continue
        lam = solve_linear(rows, list(w))
        if any(l < 0 for l in lam):
            continue
        out = []
        for i, l in enumerate(lam):
            if l > 0:
                child = tuple(w if j == i else gens[j] for j in range(n))
                out.extend(_refine_sector(child))
        return out
    raise NoUnimodularTriangulationFound(
        "sector %r admits no unimodular subdivision" % (gens,))


# -- cone triangulations -------------------------------------------------------


class ConeTriangulation:
    """Base: translation-periodic triangulation of one vertex cone, queried
    per dilation k of the ambient polytope."""

    def __init__(self, poly, vertex_index):
        self.poly = poly
        self.vertex_index = vertex_index
        self.apex = poly.vertices[vertex_index]
        self.cone = poly.vertex_cones[vertex_index]
        self._cone_facets = [f for f in poly.facets if f.height(self.apex) == 0]
        self._cache = {}

    # subclass hook: all candidate top simplices for dilation k (absolute
    # integer coordinates), a superset of those contained in k*Delta
    def _candidates(self, k):
        raise NotImplementedError

    def _data(self, k):
        if k not in self._cache:
            cands = self._candidates(k)
            inside = [s for s in cands
                      if all(self.poly.contains(v, k) for v in s)]
            self._cache[k] = (cands, inside)
        return self._cache[k]

    def simplices_in(self, k):
        """Top simplices of the cone triangulation contained in k*Delta."""
        return self._data(k)[1]

    def _face_on_cone_boundary(self, face, k):
        for f in self._cone_facets:
            if all(f.height(v, k) == 0 for v in face):
                return True
        return False

    def boundary_faces_in(self, k, mode="contained"):
        """(n-1)-simplices on the cone facets.

        mode 'contained': faces of top simplices contained in k*Delta (all
        their vertices then lie on the boundary of the restriction).
        mode 'star': faces of any candidate top simplex, kept when all face
        vertices lie in k*Delta (closure-of-star reading).
        """
        cands, inside = self._data(k)
        tops = inside if mode == "contained" else cands
        n1 = self.poly.dim
        faces = set()
        for s in tops:
            for drop in range(len(s)):
                face = tuple(s[i] for i in range(len(s)) if i != drop)
                if mode == "star" and not all(
                        self.poly.contains(v, k) for v in face):
                    continue
                if self._face_on_cone_boundary(face, k):
                    if affine_rank(face) != n1 - 1:
                        raise BoundaryNotSimplicial(
                            "degenerate boundary face %r" % (face,))
                    faces.add(tuple(sorted(face)))
        return sorted(faces)

    def touching_count_at(self, point, k):
        """Number of top simplices of the full (unrestricted) cone
        triangulation at dilation k having `point` as a vertex."""
        raise NotImplementedError

    def counts_in(self, k, boundary_mode="contained"):
        """(n_map, m_map): per-point counts of touching top simplices in the
        restriction to k*Delta, and of touching boundary simplices on the
        cone facets."""
        n_map = touching_counts(self.simplices_in(k))
        m_map = touching_counts(self.boundary_faces_in(k, mode=boundary_mode))
        return n_map, m_map


class BuiltConeTriangulation(ConeTriangulation):
    """Cone split into unimodular sectors, each filled with the staircase
    triangulation of a dilated standard simplex."""

    def __init__(self, poly, vertex_index, sectors=None):
        super().__init__(poly, vertex_index)
        if sectors is None:
            sectors = build_apex_sectors(self.cone)
        self.sectors = []
        for sec in sectors:
            if len(sec) != poly.dim:
                raise InvalidHint("sector needs %d generators" % poly.dim)
            g_rows = [tuple(int(sec[j][c]) for j in range(len(sec)))
                      for c in range(poly.dim)]
            if abs(bareiss_det(g_rows)) != 1:
                raise NoUnimodularTriangulationFound(
                    "sector %r is not unimodular" % (sec,))
            self.sectors.append((g_rows, mat_inverse(g_rows)))

    def touching_count_at(self, point, k):
        n = self.poly.dim
        apex_k = tuple(k * a for a in self.apex)
        rel = vsub(point, apex_k)
        total = 0
        for g_rows, g_inv in self.sectors:
            y = mat_vec(g_inv, rel)
            if any(Fraction(v).denominator != 1 or v < 0 for v in y):
                continue
            total += _sector_count_at(tuple(int(v) for v in y))
        return total

    def _candidates(self, k):
        n = self.poly.dim
        apex_k = tuple(k * a for a in self.apex)
        out = []
        for g_rows, g_inv in self.sectors:
            bound = 0
            for v in self.poly.vertices:
                rel = vsub(tuple(k * x for x in v), apex_k)
                coord_sum = sum(mat_vec(g_inv, rel))
                bound = max(bound, ceil(coord_sum))
            for s in standard_simplex_triangulation(n, bound):
                out.append(tuple(vadd(apex_k, mat_vec(g_rows, y)) for y in s))
        return out


def _sector_count_at(y):
    """Number of staircase-triangulation simplices of the full sector cone
    (no dilation bound) having the nonnegative integer point y as a vertex.

    A chain simplex visits the point exactly when its staircase corner is the
    point's staircase lift minus the indicator of the set of coordinates
    already incremented."""
    n = len(y)
    stair = [sum(y[i:]) for i in range(n)]
    total = 0
    for bits in range(1 << n):
        S = [i for i in range(n) if bits >> i & 1]
        c = [stair[i] - (1 if bits >> i & 1 else 0) for i in range(n)]
        if any(ci < 0 for ci in c):
            continue
        if any(c[i] < c[i + 1] for i in range(n - 1)):
            continue
        for pi in itertools.permutations(range(n)):
            if set(pi[:len(S)]) != set(S):
                continue
            pos = [0] * n
            for idx, v in enumerate(pi):
                pos[v] = idx
            if any(c[i] == c[i + 1] and pos[i] > pos[i + 1]
                   for i in range(n - 1)):
                continue
            total += 1
    return total


def _separating_functional(translations, n):
    """Rational u with <u, t> >= 1 for every translation vector, or raise."""
    from .lp import Infeasible, solve_lp

    ts = sorted(set(translations))
    if not ts:
        raise InvalidHint("pattern classes need at least one translation")
    try:
        _, u = solve_lp([Fraction(0)] * n,
                        A_ub=[[-x for x in t] for t in ts],
                        b_ub=[Fraction(-1)] * len(ts))
    except Infeasible:
        raise InvalidHint(
            "translation vectors are not pointed (no separating functional)")
    return tuple(u)


class PatternConeTriangulation(ConeTriangulation):
    """Cone triangulation given by translate classes: a representative
    simplex plus nonnegative integer combinations of translation vectors."""

    def __init__(self, poly, vertex_index, classes, validate_k=2):
        super().__init__(poly, vertex_index)
        n = poly.dim
        self.classes = []
        all_ts = []
        for cl in classes:
            rep = tuple(tuple(int(x) for x in v) for v in cl["simplex"])
            if len(rep) != n + 1:
                raise InvalidHint("class simplex needs %d vertices" % (n + 1))
            if normalized_simplex_volume(rep) != 1:
                raise InvalidHint("class simplex %r is not unimodular" % (rep,))
            rel = tuple(vsub(v, self.apex) for v in rep)
            ts = tuple(tuple(int(x) for x in t) for t in cl["translations"])
            self.classes.append((rel, ts))
            all_ts.extend(ts)
        self._sep = _separating_functional(all_ts, n)
        self._validate_k = validate_k
        self._validated = False

    def _instances(self, k):
        """All instances that could intersect k*Delta (superset)."""
        u = self._sep
        apex_k = tuple(k * a for a in self.apex)
        umax = max(sum(Fraction(ux) * k * vx for ux, vx in zip(u, v))
                   for v in self.poly.vertices)
        out = []
        for rel, ts in self.classes:
            base = tuple(vadd(apex_k, r) for r in rel)
            minbase = min(sum(Fraction(ux) * vx for ux, vx in zip(u, v))
                          for v in base)
            budget = umax - minbase
            if budget < 0:
                continue
            svals = [sum(Fraction(ux) * tx for ux, tx in zip(u, t)) for t in ts]

            def rec(idx, shift, used):
                if idx == len(ts):
                    out.append(tuple(vadd(b, shift) for b in base))
                    return
                room = budget - used
                top = floor(room / svals[idx])
                for mm in range(top + 1):
                    rec(idx + 1,
                        tuple(sh + mm * tc for sh, tc in zip(shift, ts[idx])),
                        used + mm * svals[idx])

            rec(0, (0,) * len(self.apex), Fraction(0))
        return out

    def _candidates(self, k):
        if not self._validated:
            self._validated = True
            self.validate(self._validate_k)
        return self._instances(k)

    def touching_count_at(self, point, k):
        u = self._sep
        apex_k = tuple(k * a for a in self.apex)
        upt = sum(Fraction(ux) * px for ux, px in zip(u, point))
        total = 0
        for rel, ts in self.classes:
            base = tuple(vadd(apex_k, r) for r in rel)
            minbase = min(sum(Fraction(ux) * vx for ux, vx in zip(u, v))
                          for v in base)
            budget = upt - minbase
            if budget < 0:
                continue
            svals = [sum(Fraction(ux) * tx for ux, tx in zip(u, t)) for t in ts]

            def rec(idx, shift, used):
                nonlocal total
                if idx == len(ts):
                    if any(vadd(b, shift) == tuple(point) for b in base):
                        total += 1
                    return
                room = budget - used
                top = floor(room / svals[idx])
                for mm in range(top + 1):
                    rec(idx + 1,
                        tuple(sh + mm * tc for sh, tc in zip(shift, ts[idx])),
                        used + mm * svals[idx])

            rec(0, (0,) * len(self.apex), Fraction(0))
        return total

    def validate(self, k):
        """Exact consistency check on the window k*Delta: the clipped volumes
        of the instances must add up to the window volume, and instances must
        have pairwise disjoint interiors."""
        poly = self.poly
        n = poly.dim
        funcs = [(lambda v, f=f: f.height(v, k)) for f in poly.facets]
        kept = []
        total = Fraction(0)
        for s in self._instances(k):
            vol = _clip_volume(s, funcs)
            if vol > 0:
                kept.append(s)
                total += vol
        expected = poly.euclidean_volume * Fraction(k) ** n
        if total != expected:
            raise RegionNotCovered(
                "pattern covers volume %s of window volume %s" % (total, expected))
        boxes = [tuple((min(v[c] for v in s), max(v[c] for v in s))
                       for c in range(n)) for s in kept]
        for i in range(len(kept)):
            for j in range(i + 1, len(kept)):
                if any(boxes[i][c][1] <= boxes[j][c][0] or
                       boxes[j][c][1] <= boxes[i][c][0] for c in range(n)):
                    continue
                if _simplex_overlap_volume(kept[i], kept[j]) != 0:
                    raise RegionNotCovered(
                        "overlapping pattern simplices %r and %r"
                        % (kept[i], kept[j]))


def _clip_volume(simplex, halfspace_funcs):
    """Volume of simplex intersected with {func >= 0 for all funcs}."""
    from .plfunc import _simplex_degenerate, simplex_volume, split_simplex_by_hyperplane

    pieces = [tuple(tuple(Fraction(x) for x in v) for v in simplex)]
    for func in halfspace_funcs:
        nxt = []
        for s in pieces:
            for sub in split_simplex_by_hyperplane(s, func):
                if all(func(v) >= 0 for v in sub) and not _simplex_degenerate(sub):
                    nxt.append(sub)
        pieces = nxt
        if not pieces:
            return Fraction(0)
    return sum(simplex_volume(s) for s in pieces)


def _simplex_overlap_volume(s1, s2):
    """Volume of the intersection of two full-dimensional simplices."""
    n = len(s1[0])
    a_rows = [[Fraction(s2[j][i]) for j in range(n + 1)] for i in range(n)]
    a_rows.append([Fraction(1)] * (n + 1))
    inv = mat_inverse(a_rows)

    def bary_func(r):
        return lambda x, r=r: (sum(inv[r][c] * Fraction(x[c]) for c in range(n))
                               + inv[r][n])

    funcs = [bary_func(r) for r in range(n + 1)]
    return _clip_volume(s1, funcs)


# -- hints and per-polytope assembly -------------------------------------------


def load_hints(data):
    """Parse hint JSON (object or list) into {vertexIndex: hint dict}."""
    if isinstance(data, dict):
        data = [data]
    out = {}
    for h in data:
        if "vertexIndex" not in h:
            raise InvalidHint("hint object needs 'vertexIndex'")
        out[int(h["vertexIndex"])] = h
    return out


def cone_triangulations(poly, hints=None):
    """One ConeTriangulation per vertex, hint-driven where hints are given.

    Hints refer to vertices by index into the polytope's sorted vertex list
    and describe either explicit apex sector simplices ('simplices', absolute
    coordinates, apex included) or translate classes ('classes')."""
    hints = hints or {}
    tris = {}
    for i in range(len(poly.vertices)):
        h = hints.get(i)
        if h is None:
            tris[i] = BuiltConeTriangulation(poly, i)
            continue
        if "classes" in h:
            tris[i] = PatternConeTriangulation(poly, i, h["classes"])
        elif "simplices" in h:
            apex = poly.vertices[i]
            sectors = []
            for s in h["simplices"]:
                pts = [tuple(int(x) for x in v) for v in s]
                if apex not in pts:
                    raise InvalidHint(
                        "hint simplex %r does not contain the apex %r"
                        % (s, apex))
                gens = tuple(vsub(p, apex) for p in pts if p != apex)
                if len(gens) != poly.dim:
                    raise InvalidHint("hint simplex %r has wrong size" % (s,))
                sectors.append(gens)
            tris[i] = BuiltConeTriangulation(poly, i, sectors=sectors)
        else:
            raise InvalidHint("hint needs 'simplices' or 'classes'")
    return tris
