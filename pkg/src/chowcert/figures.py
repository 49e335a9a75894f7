"""Diagram rendering: 2D polytopes/triangulations to SVG (matplotlib),
3D triangulations to Wavefront OBJ text."""

from __future__ import annotations

import itertools
from fractions import Fraction

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


class UnsupportedDimension(ValueError):
    pass


def render_polytope_2d(poly, path, triangulations=None, k=1):
    """SVG/PNG of k*Delta with its lattice points and, if given, the edges of
    the per-vertex cone triangulations restricted to k*Delta."""
    fig, ax = plt.subplots(figsize=(6, 6))
    verts = [tuple(float(k * x) for x in v) for v in poly.vertices]
    # polygon outline: order vertices by angle around the centroid
    cx = sum(v[0] for v in verts) / len(verts)
    cy = sum(v[1] for v in verts) / len(verts)
    import math as _math

    ring = sorted(verts, key=lambda v: _math.atan2(v[1] - cy, v[0] - cx))
    ring.append(ring[0])
    ax.plot([v[0] for v in ring], [v[1] for v in ring], "k-", linewidth=1.5)
    pts = poly.lattice_points(k)
    ax.plot([p[0] for p in pts], [p[1] for p in pts], "o",
            color="0.4", markersize=3)
    if triangulations:
        for i in sorted(triangulations):
            tri = triangulations[i]
            edges = set()
            for s in tri.simplices_in(k):
                for a, b in itertools.combinations(s, 2):
                    edges.add((min(a, b), max(a, b)))
            for a, b in sorted(edges):
                ax.plot([a[0], b[0]], [a[1], b[1]], "-",
                        color="tab:red", linewidth=0.8, alpha=0.7)
    ax.set_aspect("equal")
    ax.set_title(poly.name or "polytope")
    fig.savefig(path)
    plt.close(fig)
    return path


def render_triangulation_3d_obj(poly, triangulations, path, k=1):
    """OBJ file with one group per vertex cone; each simplex contributes its
    four triangular faces."""
    lines = ["# triangulated vertex cones, dilation k=%d" % k]
    vert_index = {}

    def vid(v):
        if v not in vert_index:
            vert_index[v] = len(vert_index) + 1
            lines.append("v %s %s %s" % tuple(float(x) for x in v))
        return vert_index[v]

    for i in sorted(triangulations):
        tri = triangulations[i]
        lines.append("g cone_%d" % i)
        for s in tri.simplices_in(k):
            ids = [vid(v) for v in s]
            for face in itertools.combinations(ids, 3):
                lines.append("f %d %d %d" % face)
    text = "\n".join(lines) + "\n"
    with open(path, "w") as fp:
        fp.write(text)
    return path


def render_diagram(poly, triangulations, path, k=1):
    if poly.dim == 2:
        return render_polytope_2d(poly, path, triangulations, k)
    if poly.dim == 3:
        return render_triangulation_3d_obj(poly, triangulations, path, k)
    raise UnsupportedDimension(
        "diagrams are available for dimensions 2 and 3 only")
