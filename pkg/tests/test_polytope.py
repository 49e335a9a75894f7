import itertools
from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from chowcert.polytope import build_polytope

shift = st.tuples(st.integers(min_value=-5, max_value=5),
                  st.integers(min_value=-5, max_value=5))


def test_simplex_basic_quantities(simplex2):
    assert simplex2.dim == 2
    assert simplex2.euclidean_volume == Fraction(1, 2)
    assert simplex2.boundary_sigma_volume == 3
    assert simplex2.count_lattice_points(1) == 3
    assert simplex2.count_lattice_points(2) == 6
    assert simplex2.classify_point((0, 0), 1) == "vertex"
    assert simplex2.classify_point((1, 1), 2) == "boundary"
    assert simplex2.classify_point((1, 1), 3) == "interior"


def test_cross_polytope_quantities(cross2):
    assert cross2.euclidean_volume == 2
    assert cross2.boundary_sigma_volume == 4
    assert cross2.moment == (0, 0)
    assert cross2.boundary_moment == (0, 0)
    r = cross2.classify_reflexivity
    assert r["weaklyReflexive"] and r["reflexive"] and r["symmetric"]
    assert r["c"] == 1
    assert cross2.symmetry == (True, (0, 0))


def test_cross_lattice_counts_match_quadratic(cross2):
    for k in range(1, 5):
        assert cross2.count_lattice_points(k) == 2 * k * k + 2 * k + 1


def test_x2_reflexivity(x2):
    r = x2.classify_reflexivity
    assert r["weaklyReflexive"] and r["symmetric"]
    assert r["c"] == 2
    assert not r["reflexive"]


def test_octahedron_structure(octahedron):
    assert octahedron.euclidean_volume == Fraction(8, 3)
    assert len(octahedron.edges) == 12
    for cone in octahedron.vertex_cones:
        assert len(cone.generators) == 4
    r = octahedron.classify_reflexivity
    assert r["weaklyReflexive"] and r["symmetric"] and r["c"] == 2


def test_kite_reflexive_off_origin(kite):
    r = kite.classify_reflexivity
    assert r["weaklyReflexive"] and r["reflexive"] and r["c"] == 1
    assert r["origin"] == (1, 1)
    assert not r["symmetric"]


def test_unit_square_not_weakly_reflexive(unit_square):
    r = unit_square.classify_reflexivity
    assert not r["weaklyReflexive"]
    assert not r["symmetric"]
    assert unit_square.symmetry == (True, (Fraction(1, 2), Fraction(1, 2)))


def test_lattice_points_sorted_and_inside(octahedron):
    pts = octahedron.lattice_points(2)
    assert pts == sorted(pts)
    assert len(pts) == len(set(pts))
    assert all(octahedron.contains(p, 2) for p in pts)
    assert octahedron.count_lattice_points(2) == len(pts)
    sums = octahedron.sum_lattice_points(2)
    assert tuple(sums) == tuple(
        sum(p[j] for p in pts) for j in range(3))


@given(shift)
@settings(max_examples=30, deadline=None)
def test_translation_invariance(delta):
    base = [(0, 0), (3, 0), (0, 2), (2, 2)]
    moved = [(x + delta[0], y + delta[1]) for x, y in base]
    p = build_polytope(base)
    q = build_polytope(moved)
    assert p.euclidean_volume == q.euclidean_volume
    assert p.boundary_sigma_volume == q.boundary_sigma_volume
    assert p.count_lattice_points(2) == q.count_lattice_points(2)


@given(st.sampled_from([[[0, 1], [1, 0]], [[1, 0], [1, 1]], [[2, 1], [1, 1]],
                        [[0, -1], [-1, 0]]]))
@settings(max_examples=10, deadline=None)
def test_unimodular_change_of_basis_invariance(m):
    # |det| = 1 lattice transforms preserve volume, sigma-boundary and counts
    base = [(0, 0), (3, 0), (0, 2), (2, 2)]
    mapped = [tuple(m[i][0] * x + m[i][1] * y for i in range(2))
              for x, y in base]
    p = build_polytope(base)
    q = build_polytope(mapped)
    assert p.euclidean_volume == q.euclidean_volume
    assert p.boundary_sigma_volume == q.boundary_sigma_volume
    for k in (1, 2, 3):
        assert p.count_lattice_points(k) == q.count_lattice_points(k)


def test_vertex_cone_generators_primitive(x2):
    from math import gcd

    for cone in x2.vertex_cones:
        for g in cone.generators:
            assert gcd(abs(g[0]), abs(g[1])) == 1


def test_facets_support_polytope(octahedron):
    for f in octahedron.facets:
        heights = [f.height(v, 1) for v in octahedron.vertices]
        assert min(heights) == 0
        assert all(h >= 0 for h in heights)


def test_cube_volume_and_facets():
    cube = build_polytope(list(itertools.product((0, 2), repeat=3)))
    assert cube.euclidean_volume == 8
    assert len(cube.facets) == 6
    assert cube.count_lattice_points(1) == 27
