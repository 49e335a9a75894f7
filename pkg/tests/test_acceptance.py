"""End-to-end acceptance checks: worked numeric examples, statistical
property suites, and CLI behavior, all in exact rational arithmetic."""

import json
import math
import random
from fractions import Fraction

import pytest

from chowcert.cli import main
from chowcert.ehrhart import ehrhart_polynomial, fo_vanishes, futaki_ono_FO
from chowcert.plfunc import (
    AffinePiece,
    PLConvexFunction,
    envelope_lp_value,
    integrate_interior,
    norm_delta,
)
from chowcert.polytope import build_polytope
from chowcert.stability import (
    chow_functional,
    evaluate_criteria,
    lambda_certificate,
    lambda_ratio,
    random_envelope_function,
)
from chowcert.triangulation import (
    cone_triangulations,
    load_hints,
    standard_simplex_triangulation,
    touching_count,
    touching_counts,
)
from chowcert.weights import apex_region, classify, weights_via_Q
from tests.conftest import fixture_path, load_fixture

SYMMETRIC_FIXTURES = ["d_2", "d_3", "x2", "octahedron"]


# -- 1: Ehrhart polynomials of standard simplices ------------------------------


def binomial_coefficients(n):
    """Coefficients of C(t+n, n), derived by direct polynomial expansion."""
    coeffs = [Fraction(1)]
    for j in range(1, n + 1):
        new = [Fraction(0)] * (len(coeffs) + 1)
        for i, c in enumerate(coeffs):
            new[i] += c * j
            new[i + 1] += c
        coeffs = new
    return tuple(c / math.factorial(n) for c in coeffs)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_standard_simplex_ehrhart_is_binomial(n):
    poly = load_fixture("delta_%d" % n)
    assert tuple(ehrhart_polynomial(poly).coefficients) == \
        binomial_coefficients(n)


# -- 2: exact trapezoid rule on unimodular simplices ---------------------------


def random_unimodular_simplex(rng, n):
    basis = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for _ in range(5):
        if n == 1:
            break
        i, j = rng.sample(range(n), 2)
        c = rng.randint(-2, 2)
        for col in range(n):
            basis[i][col] += c * basis[j][col]
    shift = [rng.randint(-3, 3) for _ in range(n)]
    return [tuple(shift)] + [
        tuple(s + r for s, r in zip(shift, row)) for row in basis]


def test_affine_integral_is_volume_times_vertex_average():
    rng = random.Random(2024)
    for _ in range(200):
        n = rng.randint(1, 4)
        verts = random_unimodular_simplex(rng, n)
        f = PLConvexFunction([AffinePiece(
            tuple(Fraction(rng.randint(-5, 5)) for _ in range(n)),
            Fraction(rng.randint(-5, 5)))])
        poly = build_polytope(verts)
        assert integrate_interior(f, poly, 1) == \
            poly.euclidean_volume * sum(f(v) for v in verts) / (n + 1)


# -- 3: staircase touching counts by face codimension --------------------------


@pytest.mark.parametrize("n", [1, 2, 3])
def test_staircase_counts_follow_face_codimension(n):
    # claim under test: every lattice point of the dilated simplex lying on a
    # codimension-j face is touched by exactly (n+1)!/(j+1)! top simplices of
    # the staircase triangulation. Holds in full for n <= 2; for n = 3 the
    # codimension-2 (edge) points violate it: the incidences of the 4 corner
    # points of a triangular face sum to 4*3! = 24 while the claimed uniform
    # value distributes only 4*(4!/3!) at edge level, so no triangulation can
    # attain the claimed count and this case fails by construction.
    simplex = load_fixture("delta_%d" % n)
    for k in range(1, 5):
        simplices = standard_simplex_triangulation(n, k)
        counts = touching_counts(simplices)
        for p in simplex.lattice_points(k):
            j = len(simplex.active_facets(p, k))
            expected = math.factorial(n + 1) // math.factorial(j + 1)
            assert counts[p] == expected, (n, k, p, j, counts[p], expected)


# -- 4: touching counts are additive over partitions ---------------------------


def test_touching_counts_additive_over_partitions():
    rng = random.Random(5)
    for _ in range(100):
        n = rng.randint(1, 3)
        k = rng.randint(1, 3)
        simplices = list(standard_simplex_triangulation(n, k))
        rng.shuffle(simplices)
        cut1 = rng.randint(0, len(simplices))
        cut2 = rng.randint(cut1, len(simplices))
        groups = [simplices[:cut1], simplices[cut1:cut2], simplices[cut2:]]
        poly = load_fixture("delta_%d" % n)
        pts = poly.lattice_points(k)
        for p in rng.sample(pts, min(4, len(pts))):
            total = touching_count(p, simplices)
            assert total == sum(touching_count(p, g) for g in groups)


# -- 5: cross-polytope weights and margins -------------------------------------


@pytest.mark.parametrize("n", [2, 3, 4])
def test_cross_polytope_weights_and_positive_margins(n):
    poly = load_fixture("d_%d" % n)
    expected_weight = 2 ** (n - 1)
    for cone in poly.vertex_cones:
        assert weights_via_Q(apex_region(cone)) == (
            expected_weight, expected_weight)
    lam = Fraction(1, n + 1)
    margin = (1 - Fraction(expected_weight * (1 - lam),
                           2 * math.factorial(n))
              - Fraction(expected_weight, math.factorial(n + 1)))
    assert margin == 1 - Fraction(2 ** (n - 2) * (n + 2),
                                  math.factorial(n + 1))
    assert margin > 0


# -- 6: elongated octahedron -----------------------------------------------------


@pytest.fixture(scope="module")
def octahedron_results():
    poly = load_fixture("octahedron")
    report = classify(poly, cone_triangulations(poly), k_max=3)
    cert = lambda_certificate(poly)
    crit = evaluate_criteria(poly, cert, report, fo_vanishes(poly))
    return poly, report, crit


def test_octahedron_weights_and_symmetry(octahedron_results):
    poly, report, crit = octahedron_results
    by_apex = {tuple(v["p"]): (v["alpha"], v["beta"])
               for v in report["vertices"]}
    assert by_apex[(2, 0, 0)] == (4, 4)
    assert by_apex[(-2, 0, 0)] == (4, 4)
    for apex in ((0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)):
        assert by_apex[apex] == (4, 8)
    r = poly.classify_reflexivity
    assert r["weaklyReflexive"] and r["c"] == 2 and r["symmetric"]
    assert crit["lambda"] == Fraction(1, 4)


def test_octahedron_vertex_inequalities_28_lt_48(octahedron_results):
    _, _, crit = octahedron_results
    swr = crit["symmetricReflexiveCriterion"]
    assert swr["applicable"]
    lefts = sorted(e["left"] for e in swr["perVertex"])
    assert lefts == [20, 20, 28, 28, 28, 28]
    assert all(e["right"] == 48 and e["ok"] for e in swr["perVertex"])


def test_octahedron_classified_small(octahedron_results):
    # expected classification per the worked example; the faithful staircase
    # counts give 16 touching simplices at edge points of the four short-axis
    # cones, which exceeds the boundary bound 12, so this reports medium.
    _, report, _ = octahedron_results
    assert report["class"] == "small"


def test_octahedron_certified_polystable(octahedron_results):
    # expected conclusion of the worked example; with the measured gamma = 16
    # the gamma bound (n+2)n!/2 = 15 just fails, so no route certifies.
    _, _, crit = octahedron_results
    assert crit["certified"]


# -- 7: narrow diamond fails by an exact equality ------------------------------


def test_narrow_diamond_equality_failure_and_exit_code(tmp_path):
    x2 = load_fixture("x2")
    by_apex = {cone.apex: weights_via_Q(apex_region(cone))
               for cone in x2.vertex_cones}
    assert by_apex[(0, 1)] == (2, 4)
    assert by_apex[(0, -1)] == (2, 4)
    report = classify(x2, cone_triangulations(x2), k_max=3)
    crit = evaluate_criteria(x2, lambda_certificate(x2), report,
                             fo_vanishes(x2))
    swr = crit["symmetricReflexiveCriterion"]
    failing = [e for e in swr["perVertex"] if not e["ok"]]
    assert failing
    assert all(e["left"] == 12 == 2 * math.factorial(3) for e in failing)
    assert not swr["pass"]
    assert main(["analyze", fixture_path("x2.json"),
                 "--json", str(tmp_path / "x2.json")]) == 1


# -- 8: hint-driven triangulations change the verdict --------------------------


def test_hinted_triangulations_change_the_verdict():
    ex35 = load_fixture("ex35")
    with open(fixture_path("ex35_fig1_hints.json")) as fp:
        hints1 = load_hints(json.load(fp))
    with open(fixture_path("ex35_fig2_hints.json")) as fp:
        hints2 = load_hints(json.load(fp))

    tris1 = cone_triangulations(ex35, hints1)
    vi = ex35.vertices.index((3, 0))
    for k in range(1, 5):
        assert tris1[vi].touching_count_at((3 * k - 3, 1), k) == 5
    report1 = classify(ex35, tris1, k_max=3)
    assert report1["class"] != "small"
    by_apex = {tuple(v["p"]): v for v in report1["vertices"]}
    left = by_apex[(-3, 0)]
    assert (left["alpha"], left["beta"], left["gamma"]) == (2, 2, 5)
    assert left["medium"] and not left["small"]

    report2 = classify(ex35, cone_triangulations(ex35, hints2), k_max=3)
    assert report2["class"] == "small"


# -- 9: seven-dimensional instability witness ----------------------------------


@pytest.fixture(scope="module")
def bipyramid():
    return load_fixture("bipyramid_7")


def abs_last_coordinate(n):
    zero = (Fraction(0),) * (n - 1)
    return PLConvexFunction([
        AffinePiece(zero + (Fraction(1),), Fraction(0)),
        AffinePiece(zero + (Fraction(-1),), Fraction(0)),
    ])


def test_bipyramid_futaki_ono_vanishes_and_lambda(bipyramid):
    assert fo_vanishes(bipyramid)
    cert = lambda_certificate(bipyramid)
    assert cert["basis"] == "symmetricWeaklyReflexive"
    assert cert["lambda"] == Fraction(1, 8)
    assert cert["certifying"]


def test_bipyramid_envelope_is_absolute_height(bipyramid):
    pts = bipyramid.lattice_points(1)
    values = [Fraction(abs(p[6])) for p in pts]
    rng = random.Random(42)
    for _ in range(50):
        vs = rng.sample(bipyramid.vertices, 3)
        w = [rng.randint(1, 5) for _ in vs]
        s = sum(w)
        x0 = tuple(sum(Fraction(wi * v[c], s) for wi, v in zip(w, vs))
                   for c in range(7))
        assert envelope_lp_value(pts, values, x0) == abs(x0[6])


def test_bipyramid_chow_value_negative(bipyramid):
    f = abs_last_coordinate(7)
    value = chow_functional(bipyramid, f, 1)
    assert value == Fraction(2, 731) - Fraction(1, 8)
    assert value < 0


# -- 10: hinge ratio tightness and the random lower bound ----------------------


def hinge(grad):
    n = len(grad)
    return PLConvexFunction([
        AffinePiece((Fraction(0),) * n, Fraction(0)),
        AffinePiece(tuple(Fraction(g) for g in grad), Fraction(0)),
    ])


def test_hinge_ratio_attains_one_third(cross2):
    assert lambda_ratio(hinge((1, 0)), cross2) == Fraction(1, 3)


def test_random_ratios_bounded_below_on_symmetric_reflexive():
    rng = random.Random(99)
    checked = 0
    plan = [("d_2", 20), ("x2", 20), ("d_3", 10)]
    for name, samples in plan:
        poly = load_fixture(name)
        bound = Fraction(1, poly.dim + 1)
        for _ in range(samples):
            f = random_envelope_function(poly, rng, k=1)
            try:
                r = lambda_ratio(f, poly)
            except Exception:
                continue
            assert r >= bound, (name, r)
            checked += 1
    assert checked >= 35


# -- 11: the affine-distance norm of symmetric functions -----------------------


def random_symmetric_function(poly, rng):
    """Random convex PL function with f(-x) = f(x) and f(0) = min = 0."""
    n = poly.dim
    pieces = [AffinePiece((Fraction(0),) * n, Fraction(0))]
    for _ in range(rng.randint(1, 3)):
        u = tuple(Fraction(rng.randint(-3, 3)) for _ in range(n))
        c = Fraction(-rng.randint(0, 2))
        pieces.append(AffinePiece(u, c))
        pieces.append(AffinePiece(tuple(-x for x in u), c))
    return PLConvexFunction(pieces)


def test_norm_equals_integral_for_symmetric_functions():
    rng = random.Random(13)
    done = 0
    while done < 20:
        poly = load_fixture(SYMMETRIC_FIXTURES[done % 3])
        f = random_symmetric_function(poly, rng)
        assert norm_delta(f, poly) == integrate_interior(f, poly, 1)
        done += 1


# -- 12: discrete-average invariant vanishing and its witness ------------------


def test_futaki_ono_vanishing_and_kite_witness(simplex2, kite):
    for name in ["delta_2"] + SYMMETRIC_FIXTURES:
        poly = load_fixture(name)
        assert fo_vanishes(poly)
        for j in range(poly.dim):
            ell = (tuple(1 if c == j else 0 for c in range(poly.dim)), 0)
            for k in range(1, 6):
                assert futaki_ono_FO(poly, ell, k) == 0
    assert not fo_vanishes(kite)
    assert futaki_ono_FO(kite, ((1, 0), 0), 1) == Fraction(-1, 30)


# -- 13: byte-identical reports --------------------------------------------------


ALL_POLYTOPE_FIXTURES = [
    "delta_1", "delta_2", "delta_3", "delta_4",
    "d_2", "d_3", "d_4", "x2", "ex35", "octahedron",
    "unit_square", "product_ex49", "kite", "bipyramid_7",
]


@pytest.mark.parametrize("name", ALL_POLYTOPE_FIXTURES)
def test_reports_are_byte_identical_across_runs(name, tmp_path):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    code1 = main(["analyze", fixture_path(name + ".json"),
                  "--json", str(a), "--seed", "0"])
    code2 = main(["analyze", fixture_path(name + ".json"),
                  "--json", str(b), "--seed", "0"])
    assert code1 == code2
    assert code1 in (0, 1)
    assert a.read_bytes() == b.read_bytes()
