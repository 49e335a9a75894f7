"""Stability functionals and the polystability criteria.

Everything exact: the functional L_a(f) = int_boundary f dsigma - a int f dV
with a = sigma-volume / volume, the lambda certificate (symmetric weakly
reflexive polytopes are lambda-stable with lambda = 1/(n+1)), a sampled
upper-bound estimator for lambda, the discrete-vs-continuous Chow functional,
the affine-minorant norm check, and the four sufficient inequalities for
asymptotic Chow polystability.
"""

from __future__ import annotations

import itertools
import math
import random
from fractions import Fraction

from .linalg import bareiss_det, primitive
from .plfunc import (
    AffinePiece,
    PLConvexFunction,
    envelope_from_values,
    integrate_boundary,
    integrate_interior,
    norm_delta,
    normalize,
    subdivision_vertices,
)


class AffineInput(ValueError):
    pass


class NoCertificate(RuntimeError):
    pass


class MissingInput(ValueError):
    pass


class EmptyFamily(ValueError):
    pass


# -- functionals ---------------------------------------------------------------


def a_constant(poly):
    """a = vol(boundary, sigma) / vol."""
    return poly.boundary_sigma_volume / poly.euclidean_volume


def L_a(f, poly):
    """L_a(f) = int_boundary f dsigma - a * int f dV (exact)."""
    return (integrate_boundary(f, poly, 1)
            - a_constant(poly) * integrate_interior(f, poly, 1))


def affine_vanishing_defect(poly):
    """L_a on the affine basis: L_a(1) = 0 by construction of a; the defect
    on the coordinates is boundary_moment - a * moment. All-zero means L_a
    kills every affine function (a hypothesis of lambda-stability, reported
    rather than assumed)."""
    a = a_constant(poly)
    return tuple(bm - a * m for bm, m in zip(poly.boundary_moment, poly.moment))


def center_of_mass(poly):
    vol = poly.euclidean_volume
    return tuple(m / vol for m in poly.moment)


def normalize_at_center(f, poly):
    """Subtract a supporting affine function of f at the center of mass O,
    giving g >= 0 with g(O) = min g = 0 (the normalization required by the
    lambda-stability inequality)."""
    center = center_of_mass(poly)
    active = max(f.pieces, key=lambda p: p(center))
    return PLConvexFunction([
        AffinePiece(tuple(g - h for g, h in zip(p.grad, active.grad)),
                    p.const - active.const)
        for p in f.pieces])


def lambda_ratio(f, poly):
    """L_a(g) / int_boundary g dsigma for non-affine f, where g is f
    normalized at the center of mass."""
    verts = subdivision_vertices(f, poly, 1)
    if f.is_affine_on(verts):
        raise AffineInput("lambda ratio is undefined for affine functions")
    g = normalize_at_center(f, poly)
    bi = integrate_boundary(g, poly, 1)
    if bi <= 0:
        raise AffineInput("normalized function vanishes on the boundary")
    return L_a(g, poly) / bi


# -- lambda certificates ---------------------------------------------------------


def lambda_certificate(poly, user_lambda=None, seed=0, estimate=True):
    """{'lambda', 'basis', 'certifying', 'witness'?}.

    Certifying bases: a symmetric weakly reflexive polytope is lambda-stable
    with lambda = 1/(n+1); a user-supplied lambda is taken on trust. The
    fallback is a sampled upper bound, which can never certify.
    """
    refl = poly.classify_reflexivity
    if refl["weaklyReflexive"] and refl["symmetric"]:
        return {
            "lambda": Fraction(1, poly.dim + 1),
            "basis": "symmetricWeaklyReflexive",
            "certifying": True,
        }
    if user_lambda is not None:
        return {
            "lambda": Fraction(user_lambda),
            "basis": "userSupplied",
            "certifying": True,
        }
    if not estimate:
        raise NoCertificate(
            "polytope is not symmetric weakly reflexive and no lambda given")
    lam, witness = lambda_upper_bound(poly, seed=seed)
    return {
        "lambda": lam,
        "basis": "estimatedUpperBound",
        "certifying": False,
        "witness": witness,
    }


def _hinge_family(poly, center, max_norm, c_values):
    n = poly.dim
    zero = AffinePiece((Fraction(0),) * n, Fraction(0))
    for u in itertools.product(range(-max_norm, max_norm + 1), repeat=n):
        if all(x == 0 for x in u):
            continue
        if primitive(u) != u:
            continue
        base = -sum(Fraction(ux) * cx for ux, cx in zip(u, center))
        for c in c_values:
            yield PLConvexFunction([
                zero,
                AffinePiece(tuple(Fraction(x) for x in u), base - Fraction(c)),
            ])


def random_envelope_function(poly, rng, k=1, vmax=4):
    """Lower convex envelope of random small integer values on the lattice
    points of k*Delta (a deterministic function of the rng state)."""
    values = {p: Fraction(rng.randint(0, vmax)) for p in poly.lattice_points(k)}
    return envelope_from_values(poly, k, values)


def lambda_upper_bound(poly, max_norm=1, c_values=(0, Fraction(1, 2)),
                       envelope_samples=3, seed=0):
    """(lambda_hat, witness): the minimum lambda_ratio over a sampled family
    of non-affine convex functions. Always an upper bound for the true
    lambda, never a certificate. Deterministic given seed and parameters."""
    center = center_of_mass(poly)
    rng = random.Random(seed)
    candidates = list(_hinge_family(poly, center, max_norm, c_values))
    for _ in range(envelope_samples):
        candidates.append(random_envelope_function(poly, rng))
    best = None
    witness = None
    for f in candidates:
        try:
            r = lambda_ratio(f, poly)
        except AffineInput:
            continue
        if best is None or r < best:
            best = r
            witness = f
    if best is None:
        raise EmptyFamily("no non-affine candidate in the sampled family")
    return best, witness


# -- Chow functional and norm checks ---------------------------------------------


def chow_functional(poly, f, k):
    """(1/chi_k) sum_{p in k*Delta} f(p) - (int_{k*Delta} f) / vol(k*Delta)."""
    pts = poly.lattice_points(k)
    chi = len(pts)
    disc = sum(f(p) for p in pts) / chi
    vol = poly.euclidean_volume * Fraction(k) ** poly.dim
    return disc - integrate_interior(f, poly, k) / vol


def uniform_K_check(poly, fs, delta=1):
    """Margins L_a(f) - delta * ||f|| for each sampled f (after normalizing);
    nonnegative margins witness the uniform stability inequality."""
    out = []
    for f in fs:
        g = normalize(f, poly)
        margin = L_a(g, poly) - Fraction(delta) * norm_delta(g, poly)
        out.append({"margin": margin, "ok": margin >= 0})
    return out


# -- criteria ---------------------------------------------------------------------


def is_delzant(poly):
    """Every vertex cone simplicial and unimodular (smooth toric variety)."""
    n = poly.dim
    for cone in poly.vertex_cones:
        if len(cone.generators) != n:
            return False
        if abs(bareiss_det([list(g) for g in cone.generators])) != 1:
            return False
    return True


def q_volumes(poly):
    """Per vertex: (vol(Q_i), vol(boundary of Q_i)) with lattice-normalized
    volumes of the outer region of the apex neighborhood."""
    from .weights import apex_region, lattice_volume

    out = []
    for cone in poly.vertex_cones:
        region = apex_region(cone)
        vol_q = sum((lattice_volume(f) for f in region.q_faces), Fraction(0))
        vol_dq = sum((lattice_volume(r) for r in region.ridges), Fraction(0))
        out.append((vol_q, vol_dq))
    return out


def evaluate_criteria(poly, certificate, weights_report, fo_vanishes):
    """Evaluate the four sufficient polystability inequalities exactly.

    Routes: the small-polytope inequality (per-vertex margin), the medium
    route (adds the gamma margin, needs a smooth polytope), the symmetric
    weakly reflexive specialization, and the Q-volume specialization.
    'certified' means some applicable route passes with a certifying lambda
    and vanishing Futaki-Ono invariant.
    """
    if certificate is None or weights_report is None:
        raise MissingInput("criteria need a lambda certificate and weights")
    n = poly.dim
    lam = Fraction(certificate["lambda"])
    certifying = bool(certificate["certifying"])
    cls = weights_report["class"]
    gamma = weights_report["gamma"]
    fact_n = math.factorial(n)
    fact_n1 = math.factorial(n + 1)
    refl = poly.classify_reflexivity
    delzant = is_delzant(poly)

    margins = []
    for v in weights_report["vertices"]:
        a_i, b_i = v["alpha"], v["beta"]
        margins.append(1 - Fraction(a_i * (1 - lam), 2 * fact_n)
                       - Fraction(b_i, fact_n1))
    margins_pos = all(m > 0 for m in margins)
    gamma_margin = Fraction(1 + lam, 2) - Fraction(gamma, fact_n1)

    thm_small = {
        "applicable": cls == "small",
        "margins": margins,
        "pass": margins_pos,
    }
    thm_small["certified"] = (thm_small["applicable"] and thm_small["pass"]
                              and certifying and fo_vanishes)

    thm_medium = {
        "applicable": cls in ("small", "medium") and delzant,
        "gammaMargin": gamma_margin,
        "margins": margins,
        "pass": gamma_margin >= 0 and margins_pos,
    }
    thm_medium["certified"] = (thm_medium["applicable"] and thm_medium["pass"]
                               and certifying and fo_vanishes)

    # symmetric weakly reflexive specialization (lambda = 1/(n+1) built in)
    gamma_bound = Fraction((n + 2) * fact_n, 2)
    per_vertex = []
    for v in weights_report["vertices"]:
        left = n * v["alpha"] + 2 * v["beta"]
        right = 2 * fact_n1
        per_vertex.append({"p": v["p"], "left": left, "right": right,
                           "ok": left < right})
    swr = {
        "applicable": (refl["weaklyReflexive"] and refl["symmetric"]
                       and cls in ("small", "medium")),
        "gammaBound": gamma_bound,
        "gammaOK": gamma <= gamma_bound,
        "perVertex": per_vertex,
        "pass": gamma <= gamma_bound and all(e["ok"] for e in per_vertex),
    }
    swr["certified"] = (swr["applicable"] and swr["pass"] and fo_vanishes)

    # Q-volume specialization (smooth polytopes, n >= 2)
    qvol = {
        "applicable": (delzant and n >= 2 and cls in ("small", "medium")),
        "gammaMargin": gamma_margin,
        "perVertex": [],
        "pass": False,
    }
    if n >= 2:
        rows = []
        for (vq, vdq), v in zip(q_volumes(poly), weights_report["vertices"]):
            left = 2 * (n - 1) * vq + (1 - lam) * (n + 1) * vdq
            right = 2 * (n - 1) * n * (n + 1)
            rows.append({"p": v["p"], "left": left, "right": right,
                         "ok": left < right})
        qvol["perVertex"] = rows
        qvol["pass"] = gamma_margin >= 0 and all(e["ok"] for e in rows)
    qvol["certified"] = (qvol["applicable"] and qvol["pass"]
                         and certifying and fo_vanishes)

    certified = (thm_small["certified"] or thm_medium["certified"]
                 or swr["certified"] or qvol["certified"])
    return {
        "lambda": lam,
        "lambdaBasis": certificate["basis"],
        "lambdaCertifying": certifying,
        "foVanishes": fo_vanishes,
        "delzant": delzant,
        "class": cls,
        "smallCriterion": thm_small,
        "mediumCriterion": thm_medium,
        "symmetricReflexiveCriterion": swr,
        "qVolumeCriterion": qvol,
        "certified": certified,
    }
