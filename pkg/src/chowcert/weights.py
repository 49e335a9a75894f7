"""Apex regions, cone weights, and the small/medium polytope classification.

A vertex cone's apex region R is the hull of the apex and the primitive edge
directions (in apex-relative coordinates); Q is the union of the faces of R
not containing the apex. Weights can be computed two ways: geometrically from
the lattice-normalized volumes of Q and its boundary, or by counting simplices
touching the apex in a concrete cone triangulation. For the sector-based
triangulation the two agree; for arbitrary triangulations counting dominates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .hull import convex_hull
from .linalg import affine_rank, vsub
from .triangulation import induced_lattice_coords


class NonIntegralWeight(ArithmeticError):
    pass


@dataclass(frozen=True)
class ApexRegion:
    cone: object
    q_faces: tuple   # vertex tuples (apex-relative) of the faces avoiding 0
    ridges: tuple    # vertex tuples of the (n-2)-faces where Q meets the cone boundary


def lattice_volume(points):
    """Volume of the hull of integer points, normalized to the induced
    lattice of their affine span (a unit lattice d-simplex has volume 1/d!).
    A single point has volume 1 (counting measure)."""
    from .polytope import build_polytope

    if affine_rank(points) == 0:
        return Fraction(1)
    to_y, _, _ = induced_lattice_coords(points)
    return build_polytope([to_y(p) for p in points]).euclidean_volume


def apex_region(cone):
    """R = Conv{0, primitive edge directions}; Q = faces of R avoiding 0."""
    n = len(cone.apex)
    gens = [tuple(g) for g in cone.generators]
    if n == 1:
        return ApexRegion(cone=cone, q_faces=(tuple(gens),), ridges=())
    pts = [(0,) * n] + gens
    hull = convex_hull(pts)
    q_faces = []
    zero_faces = []
    for (normal, offset), simps in zip(hull.facets, hull.facet_simplices):
        verts = sorted({hull.points[i] for s in simps for i in s})
        if offset == 0:
            zero_faces.append(verts)
        else:
            q_faces.append(tuple(verts))
    ridges = set()
    for qf in q_faces:
        qset = set(qf)
        for zf in zero_faces:
            common = sorted(qset.intersection(zf))
            if common and affine_rank(common) == n - 2:
                ridges.add(tuple(common))
    return ApexRegion(cone=cone, q_faces=tuple(q_faces), ridges=tuple(sorted(ridges)))


def weights_via_Q(region):
    """(alpha, beta) from the lattice volumes of Q and its boundary:
    alpha = vol(boundary of Q) * (n-2)!,  beta = vol(Q) * (n-1)!."""
    n = len(region.cone.apex)
    if n < 2:
        raise ValueError("weights need dimension >= 2")
    beta = sum(lattice_volume(f) for f in region.q_faces) * math.factorial(n - 1)
    alpha = sum(lattice_volume(r) for r in region.ridges) * math.factorial(n - 2)
    if Fraction(alpha).denominator != 1 or Fraction(beta).denominator != 1:
        raise NonIntegralWeight("alpha=%s beta=%s" % (alpha, beta))
    return int(alpha), int(beta)


def weights_via_counting(poly, vertex_index, tri, k_max=4):
    """(alpha, beta) counted at the apex of the dilated cone: alpha = number
    of boundary (n-1)-simplices and beta = number of top simplices of the
    restriction touching the apex, checked constant over k <= k_max."""
    apex = poly.vertices[vertex_index]
    alphas = []
    betas = []
    for k in range(1, k_max + 1):
        apex_k = tuple(k * a for a in apex)
        n_map, m_map = tri.counts_in(k)
        betas.append(n_map.get(apex_k, 0))
        alphas.append(m_map.get(apex_k, 0))
    stable = len(set(alphas)) == 1 and len(set(betas)) == 1
    return max(alphas), max(betas), stable


def profile_counts(poly, tris, k):
    """Per lattice point of k*Delta: the max over vertex cones of the top
    and boundary touching counts in the restrictions."""
    maps = [tris[i].counts_in(k) for i in sorted(tris)]
    out = {}
    for p in poly.lattice_points(k):
        out[p] = {
            "n": max(nm.get(p, 0) for nm, _ in maps),
            "m": max(mm.get(p, 0) for _, mm in maps),
        }
    return out


def classify(poly, tris, k_max=4):
    """Small/medium classification report.

    Per vertex cone and every dilation k <= k_max, the touching counts of all
    non-vertex lattice points of k*Delta are checked against:
      small:  interior n <= (n+1)!; boundary n <= (n+1)!/2 and m <= n!
      medium: interior n <= (n+1)!; boundary m <= n!
    gamma_i is the max boundary non-vertex top count for cone i.
    """
    n = poly.dim
    n_bound_int = math.factorial(n + 1)
    n_bound_bdy = math.factorial(n + 1) // 2
    m_bound_bdy = math.factorial(n)
    vertices_report = []
    all_small = True
    all_medium = True
    gammas = []
    for i in sorted(tris):
        tri = tris[i]
        apex = poly.vertices[i]
        failing = []
        small_ok = True
        medium_ok = True
        gamma_i = 0
        for k in range(1, k_max + 1):
            n_map, m_map = tri.counts_in(k)
            for p in set(n_map) | set(m_map):
                cls = poly.classify_point(p, k)
                if cls == "vertex":
                    continue
                nc = n_map.get(p, 0)
                mc = m_map.get(p, 0)
                if nc > n_bound_int:
                    small_ok = medium_ok = False
                    failing.append("interior count %d > %d at %r (k=%d)"
                                   % (nc, n_bound_int, p, k))
                if cls == "boundary":
                    gamma_i = max(gamma_i, nc)
                    if nc > n_bound_bdy:
                        small_ok = False
                        failing.append("boundary count %d > %d at %r (k=%d)"
                                       % (nc, n_bound_bdy, p, k))
                    if mc > m_bound_bdy:
                        small_ok = medium_ok = False
                        failing.append("boundary face count %d > %d at %r (k=%d)"
                                       % (mc, m_bound_bdy, p, k))
        alpha, beta, stable = weights_via_counting(poly, i, tri, k_max)
        if not stable:
            failing.append("apex counts vary with k")
            small_ok = medium_ok = False
        gammas.append(gamma_i)
        all_small = all_small and small_ok
        all_medium = all_medium and medium_ok
        vertices_report.append({
            "p": list(apex),
            "alpha": alpha,
            "beta": beta,
            "gamma": gamma_i,
            "small": small_ok,
            "medium": medium_ok,
            "failing": failing,
        })
    gamma = max(gammas) if gammas else 0
    cls = "small" if all_small else ("medium" if all_medium else "none")
    return {
        "vertices": vertices_report,
        "class": cls,
        "alpha": max(v["alpha"] for v in vertices_report),
        "beta": max(v["beta"] for v in vertices_report),
        "gamma": gamma,
        "kMax": k_max,
    }
