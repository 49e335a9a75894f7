import random
from fractions import Fraction

import pytest

from chowcert.ehrhart import fo_vanishes
from chowcert.plfunc import AffinePiece, PLConvexFunction
from chowcert.stability import (
    AffineInput,
    L_a,
    NoCertificate,
    a_constant,
    affine_vanishing_defect,
    chow_functional,
    evaluate_criteria,
    is_delzant,
    lambda_certificate,
    lambda_ratio,
    lambda_upper_bound,
    q_volumes,
    random_envelope_function,
    uniform_K_check,
)
from chowcert.triangulation import cone_triangulations
from chowcert.weights import classify
from tests.conftest import load_fixture


def hinge(grad, const=0):
    n = len(grad)
    return PLConvexFunction([
        AffinePiece((Fraction(0),) * n, Fraction(0)),
        AffinePiece(tuple(Fraction(g) for g in grad), Fraction(const)),
    ])


def test_a_constant_values(cross2, simplex2, unit_square):
    assert a_constant(cross2) == 2
    assert a_constant(simplex2) == 6
    assert a_constant(unit_square) == 4


def test_functional_on_hinge(cross2):
    assert L_a(hinge((1, 0)), cross2) == Fraction(1, 3)


def test_affine_defect_zero_for_balanced(cross2, x2, octahedron, kite):
    for poly in (cross2, x2, octahedron):
        assert all(d == 0 for d in affine_vanishing_defect(poly))
    assert affine_vanishing_defect(kite) == (
        Fraction(-1, 3), Fraction(-1, 3))


def test_lambda_ratio_tight_on_cross(cross2):
    assert lambda_ratio(hinge((1, 0)), cross2) == Fraction(1, 3)


def test_lambda_ratio_rejects_affine(cross2):
    aff = PLConvexFunction([AffinePiece((Fraction(1), Fraction(2)),
                                        Fraction(3))])
    with pytest.raises(AffineInput):
        lambda_ratio(aff, cross2)


def test_certificate_bases(cross2, kite):
    cert = lambda_certificate(cross2)
    assert cert["basis"] == "symmetricWeaklyReflexive"
    assert cert["lambda"] == Fraction(1, 3)
    assert cert["certifying"]
    cert = lambda_certificate(kite, user_lambda=Fraction(1, 10))
    assert cert["basis"] == "userSupplied"
    assert cert["certifying"]
    cert = lambda_certificate(kite)
    assert cert["basis"] == "estimatedUpperBound"
    assert not cert["certifying"]
    with pytest.raises(NoCertificate):
        lambda_certificate(kite, estimate=False)


def test_upper_bound_attains_true_lambda_on_cross(cross2):
    value, witness = lambda_upper_bound(cross2)
    assert value == Fraction(1, 3)
    assert lambda_ratio(witness, cross2) == value


def test_random_ratios_respect_symmetric_reflexive_bound(cross2):
    rng = random.Random(3)
    bound = Fraction(1, cross2.dim + 1)
    checked = 0
    for _ in range(20):
        f = random_envelope_function(cross2, rng, k=1)
        try:
            r = lambda_ratio(f, cross2)
        except AffineInput:
            continue
        assert r >= bound
        checked += 1
    assert checked >= 5


def test_chow_functional_values(simplex2, cross2):
    f = PLConvexFunction([
        AffinePiece((Fraction(0), Fraction(0)), Fraction(0)),
        AffinePiece((Fraction(2), Fraction(0)), Fraction(-1)),
    ])
    assert chow_functional(simplex2, f, 1) == Fraction(1, 4)
    assert chow_functional(cross2, hinge((1, 0)), 1) == Fraction(1, 30)


def test_chow_functional_zero_for_affine_on_symmetric(cross2):
    aff = PLConvexFunction([AffinePiece((Fraction(1), Fraction(0)),
                                        Fraction(2))])
    assert chow_functional(cross2, aff, 1) == 0
    assert chow_functional(cross2, aff, 2) == 0


def test_uniform_K_check_tight_margin(cross2):
    out = uniform_K_check(cross2, [hinge((1, 0))], delta=1)
    assert out[0]["margin"] == 0
    assert out[0]["ok"]


def test_delzant_detection(simplex2, unit_square, cross2, x2):
    assert is_delzant(simplex2)
    assert is_delzant(unit_square)
    assert not is_delzant(cross2)
    assert not is_delzant(x2)


def test_q_volumes_x2(x2):
    assert q_volumes(x2) == [(2, 2), (4, 2), (4, 2), (2, 2)]


def criteria_for(name, k_max=3):
    poly = load_fixture(name)
    report = classify(poly, cone_triangulations(poly), k_max=k_max)
    cert = lambda_certificate(poly)
    return evaluate_criteria(poly, cert, report, fo_vanishes(poly))


def test_cross_polytope_certified():
    crit = criteria_for("d_2")
    assert crit["smallCriterion"]["certified"]
    assert crit["symmetricReflexiveCriterion"]["certified"]
    assert crit["certified"]


def test_x2_fails_by_equality():
    crit = criteria_for("x2")
    swr = crit["symmetricReflexiveCriterion"]
    assert swr["applicable"]
    bad = [e for e in swr["perVertex"] if not e["ok"]]
    assert bad and all(e["left"] == 12 and e["right"] == 12 for e in bad)
    assert not crit["certified"]
    # the small-criterion margin is exactly zero at the wide vertices
    assert min(crit["smallCriterion"]["margins"]) == 0


def test_octahedron_fails_gamma_bound_by_one():
    crit = criteria_for("octahedron")
    swr = crit["symmetricReflexiveCriterion"]
    assert swr["applicable"]
    assert swr["gammaBound"] == 15
    assert not swr["gammaOK"]          # gamma = 16 just misses
    assert all(e["ok"] for e in swr["perVertex"])
    assert not crit["certified"]
