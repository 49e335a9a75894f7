import math
from fractions import Fraction

import pytest

from chowcert.triangulation import BuiltConeTriangulation, cone_triangulations
from chowcert.weights import (
    apex_region,
    classify,
    lattice_volume,
    profile_counts,
    weights_via_Q,
    weights_via_counting,
)
from tests.conftest import load_fixture


def test_lattice_volume_basics():
    assert lattice_volume([(0, 0)]) == 1
    assert lattice_volume([(0, 0), (3, 0)]) == 3          # segment, 3 steps
    assert lattice_volume([(0, 0), (1, 1)]) == 1          # primitive diagonal
    assert lattice_volume([(0, 0), (1, 0), (0, 1)]) == Fraction(1, 2)
    assert lattice_volume([(0, 0), (1, 0), (0, 1), (1, 1)]) == 1


def test_apex_region_of_cross_vertex():
    d2 = load_fixture("d_2")
    cone = [c for c in d2.vertex_cones if c.apex == (1, 0)][0]
    region = apex_region(cone)
    assert weights_via_Q(region) == (2, 2)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_cross_polytope_weights(n):
    poly = load_fixture("d_%d" % n)
    for cone in poly.vertex_cones:
        assert weights_via_Q(apex_region(cone)) == (2 ** (n - 1), 2 ** (n - 1))


def test_x2_weights():
    x2 = load_fixture("x2")
    expected = {(0, 1): (2, 4), (0, -1): (2, 4),
                (2, 0): (2, 2), (-2, 0): (2, 2)}
    for cone in x2.vertex_cones:
        assert weights_via_Q(apex_region(cone)) == expected[cone.apex]


def test_octahedron_weights():
    octa = load_fixture("octahedron")
    for cone in octa.vertex_cones:
        expected = (4, 4) if abs(cone.apex[0]) == 2 else (4, 8)
        assert weights_via_Q(apex_region(cone)) == expected


@pytest.mark.parametrize("name", ["d_2", "d_3", "x2", "octahedron"])
def test_counting_weights_agree_with_geometric(name):
    poly = load_fixture(name)
    for i in range(len(poly.vertices)):
        tri = BuiltConeTriangulation(poly, i)
        alpha, beta, stable = weights_via_counting(poly, i, tri, k_max=3)
        assert stable
        cone = poly.vertex_cones[i]
        assert (alpha, beta) == weights_via_Q(apex_region(cone))


def test_classify_cross_polytope_small():
    d2 = load_fixture("d_2")
    report = classify(d2, cone_triangulations(d2), k_max=4)
    assert report["class"] == "small"
    assert all(v["small"] and not v["failing"] for v in report["vertices"])
    assert report["gamma"] == 3  # = (n+1)!/2 attained on edges


def test_classify_x2_small_with_gamma_three():
    x2 = load_fixture("x2")
    report = classify(x2, cone_triangulations(x2), k_max=4)
    assert report["class"] == "small"
    assert report["alpha"] == 2
    assert report["beta"] == 4


def test_classify_octahedron_medium_gamma_sixteen():
    octa = load_fixture("octahedron")
    report = classify(octa, cone_triangulations(octa), k_max=3)
    assert report["class"] == "medium"
    assert report["gamma"] == 16
    by_apex = {tuple(v["p"]): v for v in report["vertices"]}
    # the long-axis cones stay within the small bounds, the short ones do not
    assert by_apex[(2, 0, 0)]["small"]
    assert by_apex[(-2, 0, 0)]["small"]
    for apex in ((0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)):
        assert not by_apex[apex]["small"]
        assert by_apex[apex]["medium"]
        assert by_apex[apex]["gamma"] == 16
    assert by_apex[(2, 0, 0)]["alpha"] == 4
    assert by_apex[(2, 0, 0)]["beta"] == 4
    assert by_apex[(0, 1, 0)]["beta"] == 8


def test_small_implies_medium_per_vertex():
    for name in ("d_2", "x2", "octahedron", "delta_2", "delta_3"):
        poly = load_fixture(name)
        report = classify(poly, cone_triangulations(poly), k_max=2)
        for v in report["vertices"]:
            if v["small"]:
                assert v["medium"]


def test_profile_counts_bounded_by_factorials():
    d2 = load_fixture("d_2")
    tris = cone_triangulations(d2)
    prof = profile_counts(d2, tris, 2)
    for p, entry in prof.items():
        assert entry["n"] <= math.factorial(3)
        assert entry["m"] <= math.factorial(3)
