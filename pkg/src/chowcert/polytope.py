"""Lattice polytopes: facets, lattice points, volumes, boundary measure,
vertex cones, automorphisms, reflexivity.

All arithmetic exact (ints / Fractions). The polytope is immutable after
construction; derived data is cached on the instance.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import gcd

from .hull import EmptyInput, NotFullDimensional, convex_hull
from .linalg import (
    affine_rank,
    bareiss_det,
    complement_vector,
    mat_inverse,
    mat_rank,
    mat_vec,
    primitive,
    solve_linear_system,
    vec_gcd,
    vsub,
)


class NotSymmetricOrigin(ValueError):
    """Symmetric test requested but the fixed point is not the origin."""


@dataclass(frozen=True)
class Facet:
    """Facet with inward primitive normal: h(x) = <x, normal> + offset >= 0."""

    normal: tuple
    offset: int

    def height(self, point, k=1):
        """h-value on the k-th dilation: <x, v> + k*offset."""
        return sum(a * b for a, b in zip(point, self.normal)) + k * self.offset


@dataclass(frozen=True)
class VertexCone:
    apex: tuple
    generators: tuple  # primitive integer edge directions


class LatticePolytope:
    def __init__(self, vertices, facets, facet_simplices, name=""):
        self.vertices = tuple(sorted(tuple(int(x) for x in v) for v in vertices))
        self.dim = len(self.vertices[0])
        self.facets = tuple(facets)
        # per facet: list of vertex tuples (len n) of simplices tiling the facet
        self.facet_simplices = tuple(tuple(s) for s in facet_simplices)
        self.name = name

    # -- construction -----------------------------------------------------

    @staticmethod
    def from_vertices(vertices, name=""):
        return build_polytope(vertices, name=name)

    def __repr__(self):
        return "LatticePolytope(%r, dim=%d, %d vertices)" % (
            self.name, self.dim, len(self.vertices))

    def key(self):
        return self.vertices

    # -- membership / classification --------------------------------------

    def contains(self, point, k=1):
        return all(f.height(point, k) >= 0 for f in self.facets)

    def active_facets(self, point, k=1):
        return [i for i, f in enumerate(self.facets) if f.height(point, k) == 0]

    def classify_point(self, point, k=1):
        """'interior' | 'boundary' | 'vertex' for a point of k*Delta."""
        act = self.active_facets(point, k)
        if not act:
            return "interior"
        normals = [self.facets[i].normal for i in act]
        if len(normals) >= self.dim and mat_rank(normals) == self.dim:
            return "vertex"
        return "boundary"

    # -- lattice points ----------------------------------------------------

    def bounding_box(self, k=1):
        n = self.dim
        lo = [min(v[j] for v in self.vertices) * k for j in range(n)]
        hi = [max(v[j] for v in self.vertices) * k for j in range(n)]
        return lo, hi

    def lattice_points(self, k=1):
        """All integer points of k*Delta, lexicographically sorted."""
        from .counting import enumerate_points

        A = [f.normal for f in self.facets]
        b = [f.offset * k for f in self.facets]
        lo, hi = self.bounding_box(k)
        return enumerate_points(A, b, lo, hi)

    def lattice_points_classified(self, k=1):
        """list of (point, class) with class in {interior, boundary, vertex}."""
        return [(p, self.classify_point(p, k)) for p in self.lattice_points(k)]

    def count_lattice_points(self, k=1):
        from .counting import count_points

        A = [f.normal for f in self.facets]
        b = [f.offset * k for f in self.facets]
        lo, hi = self.bounding_box(k)
        return count_points(A, b, lo, hi)

    def sum_lattice_points(self, k=1):
        """Vector sum of all integer points of k*Delta (exact)."""
        from .counting import sum_points

        A = [f.normal for f in self.facets]
        b = [f.offset * k for f in self.facets]
        lo, hi = self.bounding_box(k)
        return sum_points(A, b, lo, hi)

    # -- volumes and measures ----------------------------------------------

    @cached_property
    def _interior_simplices(self):
        """Simplices (tuples of vertex tuples) tiling the polytope: cone from
        the first vertex over facet simplices on facets not containing it."""
        v0 = self.vertices[0]
        simplices = []
        for f, simps in zip(self.facets, self.facet_simplices):
            if f.height(v0) == 0:
                continue
            for s in simps:
                simplices.append((v0,) + tuple(s))
        return simplices

    @cached_property
    def euclidean_volume(self):
        n = self.dim
        total = Fraction(0)
        fact = 1
        for i in range(2, n + 1):
            fact *= i
        for s in self._interior_simplices:
            edges = [vsub(q, s[0]) for q in s[1:]]
            total += Fraction(abs(bareiss_det(edges)), fact)
        return total

    def facet_sigma_volume(self, facet_index):
        """Lattice-normalized boundary measure of one facet."""
        f = self.facets[facet_index]
        n = self.dim
        if n == 1:
            return Fraction(1)
        w = complement_vector(f.normal)
        fact = 1
        for i in range(2, n):
            fact *= i
        total = Fraction(0)
        for s in self.facet_simplices[facet_index]:
            rows = [vsub(q, s[0]) for q in s[1:]] + [w]
            total += Fraction(abs(bareiss_det(rows)), fact)
        return total

    @cached_property
    def boundary_sigma_volume(self):
        return sum(self.facet_sigma_volume(i) for i in range(len(self.facets)))

    @cached_property
    def moment(self):
        """Exact vector integral of x over the polytope."""
        n = self.dim
        fact = 1
        for i in range(2, n + 1):
            fact *= i
        total = [Fraction(0)] * n
        for s in self._interior_simplices:
            edges = [vsub(q, s[0]) for q in s[1:]]
            vol = Fraction(abs(bareiss_det(edges)), fact)
            for j in range(n):
                total[j] += vol * Fraction(sum(q[j] for q in s), n + 1)
        return tuple(total)

    @cached_property
    def boundary_moment(self):
        """Exact vector integral of x over the boundary w.r.t. sigma."""
        n = self.dim
        total = [Fraction(0)] * n
        if n == 1:
            for v in self.vertices:
                total[0] += v[0]
            return tuple(total)
        fact = 1
        for i in range(2, n):
            fact *= i
        for fi, f in enumerate(self.facets):
            w = complement_vector(f.normal)
            for s in self.facet_simplices[fi]:
                rows = [vsub(q, s[0]) for q in s[1:]] + [w]
                svol = Fraction(abs(bareiss_det(rows)), fact)
                for j in range(n):
                    total[j] += svol * Fraction(sum(q[j] for q in s), n)
        return tuple(total)

    # -- combinatorics -----------------------------------------------------

    @cached_property
    def edges(self):
        """Pairs of vertex indices joined by an edge of the polytope."""
        n = self.dim
        m = len(self.vertices)
        active = [set(self.active_facets(v)) for v in self.vertices]
        out = []
        for i in range(m):
            for j in range(i + 1, m):
                common = active[i] & active[j]
                if len(common) < n - 1:
                    continue
                normals = [self.facets[c].normal for c in common]
                if mat_rank(normals) == n - 1:
                    out.append((i, j))
        return tuple(out)

    @cached_property
    def vertex_cones(self):
        adj = {i: [] for i in range(len(self.vertices))}
        for i, j in self.edges:
            adj[i].append(j)
            adj[j].append(i)
        cones = []
        for i, v in enumerate(self.vertices):
            gens = sorted(primitive(vsub(self.vertices[j], v)) for j in adj[i])
            cones.append(VertexCone(apex=v, generators=tuple(gens)))
        return tuple(cones)

    # -- automorphisms and symmetry -----------------------------------------

    def _vertex_colors(self):
        """Cheap affine invariants per vertex for pruning the search."""
        adj = {i: [] for i in range(len(self.vertices))}
        for i, j in self.edges:
            adj[i].append(j)
            adj[j].append(i)
        facet_sizes = {}
        for fi, f in enumerate(self.facets):
            facet_sizes[fi] = sum(1 for v in self.vertices if f.height(v) == 0)
        colors = []
        for i, v in enumerate(self.vertices):
            edge_lens = sorted(
                vec_gcd(vsub(self.vertices[j], v)) for j in adj[i])
            fsz = sorted(facet_sizes[fi] for fi in self.active_facets(v))
            colors.append((len(adj[i]), tuple(edge_lens), tuple(fsz)))
        # one refinement round: include the multiset of neighbor colors
        refined = []
        for i in range(len(self.vertices)):
            nb = tuple(sorted(colors[j] for j in adj[i]))
            refined.append((colors[i], nb))
        return refined, adj

    def lattice_automorphisms(self, det_one=True, limit=None):
        """Affine maps x -> g x + t (integer g, |det g| = 1) preserving the
        vertex set. det_one restricts to det g = +1."""
        return list(self.iter_automorphisms(det_one=det_one, limit=limit))

    def iter_automorphisms(self, det_one=True, limit=None, prefix_reps=0):
        n = self.dim
        verts = self.vertices
        m = len(verts)
        colors, adj = self._vertex_colors()
        vert_set = set(verts)
        vert_index = {v: i for i, v in enumerate(verts)}

        # frame: affinely independent vertices, rare colors first
        order = sorted(range(m), key=lambda i: (sum(1 for c in colors if c == colors[i]), i))
        frame = []
        rows = []
        for i in order:
            cand = list(vsub(verts[i], verts[order[0]])) if frame else None
            if not frame:
                frame.append(i)
                continue
            if mat_rank(rows + [cand]) > len(rows):
                rows.append(cand)
                frame.append(i)
                if len(frame) == n + 1:
                    break
        v0 = verts[frame[0]]
        vmat = [list(vsub(verts[frame[b]], v0)) for b in range(1, n + 1)]
        vinv = mat_inverse(vmat)  # rows of inverse, Fractions

        adj_sets = {i: set(adj[i]) for i in adj}
        count = 0

        def consistent(assign, i, w):
            # adjacency pattern between frame vertices must be preserved
            for (fi, wi) in assign:
                if (fi in adj_sets[i]) != (wi in adj_sets[w]):
                    return False
            return True

        def candidates(pos, assign):
            fi = frame[pos]
            for w in range(m):
                if colors[w] != colors[fi]:
                    continue
                if any(wi == w for _, wi in assign):
                    continue
                if not consistent(assign, fi, w):
                    continue
                # affine independence of images
                if pos >= 2:
                    w0 = verts[assign[0][1]]
                    wrows = [list(vsub(verts[wi], w0)) for _, wi in assign[1:]]
                    wrows.append(list(vsub(verts[w], w0)))
                    if mat_rank(wrows) < len(wrows):
                        continue
                yield w

        def rec(pos, assign, stop_count=None):
            nonlocal count
            if limit is not None and count >= limit:
                return
            if stop_count is not None and count >= stop_count:
                return
            if pos == n + 1:
                w0 = verts[assign[0][1]]
                wmat = [list(vsub(verts[assign[b][1]], w0)) for b in range(1, n + 1)]
                # g = wmat^T ... we need g with g*(v_b - v0) = w_b - w0:
                # g = W^T_cols * inv; using row convention: g[r][c]
                g_rows = []
                ok = True
                for r in range(n):
                    row = []
                    for c in range(n):
                        val = sum(Fraction(wmat[kk][r]) * vinv[c][kk] for kk in range(n))
                        if val.denominator != 1:
                            ok = False
                            break
                        row.append(int(val))
                    if not ok:
                        break
                    g_rows.append(tuple(row))
                if not ok:
                    return
                d = bareiss_det(g_rows)
                if abs(d) != 1 or (det_one and d != 1):
                    return
                t = vsub(verts[assign[0][1]], mat_vec(g_rows, v0))
                # verify on the whole vertex set
                for v in verts:
                    img = tuple(a + b for a, b in zip(mat_vec(g_rows, v), t))
                    if img not in vert_set:
                        return
                count += 1
                yield (tuple(g_rows), tuple(t))
                return
            fi = frame[pos]
            for w in candidates(pos, assign):
                yield from rec(pos + 1, assign + [(fi, w)], stop_count)

        if prefix_reps:
            # one representative automorphism per admissible image prefix of
            # the first prefix_reps frame slots — spreads the search so the
            # harvested generators have diverse fixed subspaces
            depth = min(prefix_reps, n + 1)

            def prefixes(pos, assign):
                if pos == depth:
                    yield assign
                    return
                fi = frame[pos]
                for w in candidates(pos, assign):
                    yield from prefixes(pos + 1, assign + [(fi, w)])

            for assign in prefixes(0, []):
                yield from rec(depth, assign, stop_count=count + 1)
            return

        yield from rec(0, [])

    @cached_property
    def symmetry(self):
        """(is_symmetric, fixed_point or None) for the SL automorphism group.

        Intersects the fixed subspaces of automorphisms as they are found;
        the group's fixed set always contains the vertex centroid, so once the
        intersection is 0-dimensional it equals the full group's fixed set.
        """
        n = self.dim
        centroid = tuple(
            Fraction(sum(v[j] for v in self.vertices), len(self.vertices))
            for j in range(n))
        # fixed subspace: affine space through centroid, direction space dirs
        dirs = [tuple(Fraction(1) if i == j else Fraction(0) for i in range(n))
                for j in range(n)]

        def shrink(g):
            # intersect dirs with ker(g - I)
            nonlocal dirs
            rows = [[Fraction(g[r][c]) - (1 if r == c else 0) for c in range(n)]
                    for r in range(n)]
            mat = [[sum(rows[r][c] * d[c] for c in range(n)) for d in dirs]
                   for r in range(n)]
            _, null = solve_linear_system(mat, [Fraction(0)] * n)
            dirs = [tuple(sum(a[i] * dirs[i][c] for i in range(len(dirs)))
                          for c in range(n)) for a in null]

        # fast pass: diverse generator harvest (one per 2-slot image prefix)
        for g, t in self.iter_automorphisms(det_one=True, prefix_reps=2):
            shrink(g)
            if not dirs:
                break
        if dirs:
            # slow, exhaustive pass (small groups end up here)
            for g, t in self.iter_automorphisms(det_one=True, limit=200000):
                shrink(g)
                if not dirs:
                    break
        return (len(dirs) == 0, centroid if len(dirs) == 0 else None)

    @cached_property
    def classify_reflexivity(self):
        """{'weaklyReflexive': bool, 'c': int|None, 'reflexive': bool,
            'symmetric': bool, 'fixedPoint': tuple|None}"""
        n = self.dim
        # solve <v_i, z> - c = -a_i over all facets
        rows = [list(f.normal) + [-1] for f in self.facets]
        rhs = [-f.offset for f in self.facets]
        sol = solve_linear_system(rows, rhs)
        weakly = False
        c_val = None
        z = None
        if sol is not None:
            x, null = sol
            if not null:
                z, c = x[:n], x[n]
                if all(v.denominator == 1 for v in z) and c.denominator == 1 and c >= 1:
                    weakly = True
                    c_val = int(c)
            else:
                # scan small integer c along the solution space
                for c_try in range(1, 1 + max(abs(f.offset) for f in self.facets) + n):
                    rows2 = rows
                    # add equation c = c_try
                    sol2 = solve_linear_system(
                        rows2 + [[0] * n + [1]], rhs + [c_try])
                    if sol2 is None:
                        continue
                    x2, null2 = sol2
                    if null2:
                        continue
                    z2 = x2[:n]
                    if all(v.denominator == 1 for v in z2):
                        weakly = True
                        c_val = c_try
                        z = z2
                        break
        unique_fixed, fixed = self.symmetry
        # "symmetric" additionally requires the fixed point to be a lattice
        # point, so the polytope can be translated to put it at the origin
        symmetric = unique_fixed and all(v.denominator == 1 for v in fixed)
        return {
            "weaklyReflexive": weakly,
            "c": c_val,
            "reflexive": weakly and c_val == 1,
            "symmetric": symmetric,
            "uniqueFixedPoint": unique_fixed,
            "fixedPoint": fixed,
            "origin": z,
        }


def build_polytope(vertices, name=""):
    """Construct a LatticePolytope from integer points (extreme or not)."""
    if not vertices:
        raise EmptyInput("no vertices given")
    pts = []
    seen = set()
    for v in vertices:
        t = tuple(int(x) for x in v)
        if any(Fraction(x).denominator != 1 for x in v):
            raise ValueError("vertices must be integral")
        if t not in seen:
            seen.add(t)
            pts.append(t)
    n = len(pts[0])
    if affine_rank(pts) < n:
        raise NotFullDimensional(
            "points span a %d-dimensional affine subspace of R^%d"
            % (affine_rank(pts), n))
    res = convex_hull(pts)
    extreme = [pts[i] for i in res.vertex_indices]
    if len(extreme) < len(pts):
        res = convex_hull(extreme)
        extreme = [extreme[i] for i in res.vertex_indices]
    facets = []
    facet_simplices = []
    for (normal, offset), simps in zip(res.facets, res.facet_simplices):
        # hull gives outward <u,x> <= c; store inward h(x) = <x,-u> + c >= 0
        inward = tuple(-x for x in normal)
        off = Fraction(offset)
        assert off.denominator == 1, "integral vertices give integral offsets"
        facets.append(Facet(normal=inward, offset=int(off)))
        facet_simplices.append(
            [tuple(res.points[i] for i in s) for s in simps])
    order = sorted(range(len(facets)), key=lambda i: (facets[i].normal, facets[i].offset))
    facets = [facets[i] for i in order]
    facet_simplices = [facet_simplices[i] for i in order]
    return LatticePolytope(extreme, facets, facet_simplices, name=name)
