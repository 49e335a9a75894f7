"""Ehrhart polynomial, sum polynomial, Futaki-Ono invariants.

All exact: counts/sums come from the integer counting engine, polynomials
from Lagrange interpolation over Q, verified against extra direct counts and
against the volume/boundary-measure leading coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


class CountMismatch(ArithmeticError):
    """Interpolated polynomial disagrees with a direct count (enumeration bug)."""


class IndexOutOfRange(IndexError):
    pass


# -- polynomial helpers (coefficient lists, ascending degree) ----------------

def poly_eval(coeffs, x):
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def lagrange_interpolate(points):
    """Exact interpolation through (x_i, y_i); returns ascending coeffs."""
    n = len(points)
    coeffs = [Fraction(0)] * n
    for i, (xi, yi) in enumerate(points):
        # basis polynomial prod (x - xj)/(xi - xj)
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, (xj, _) in enumerate(points):
            if j == i:
                continue
            # multiply basis by (x - xj)
            new = [Fraction(0)] * (len(basis) + 1)
            for d, c in enumerate(basis):
                new[d] += c * (-xj)
                new[d + 1] += c
            basis = new
            denom *= Fraction(xi) - Fraction(xj)
        w = Fraction(yi) / denom
        for d, c in enumerate(basis):
            coeffs[d] += w * c
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


@dataclass(frozen=True)
class EhrhartPolynomial:
    coefficients: tuple  # ascending, length n+1

    def __call__(self, k):
        return poly_eval(self.coefficients, Fraction(k))


@dataclass(frozen=True)
class SumPolynomial:
    """s(t) with s(i) = (1/i) * sum of lattice points of i*Delta (vector)."""

    coefficients: tuple  # tuple of coefficient vectors, ascending in degree

    def __call__(self, k):
        n = len(self.coefficients[0])
        k = Fraction(k)
        out = [Fraction(0)] * n
        for d in range(len(self.coefficients) - 1, -1, -1):
            for j in range(n):
                out[j] = out[j] * k + self.coefficients[d][j]
        return tuple(out)


_CACHE = {}


def _data(poly):
    """Cached counts/sums derived data for a polytope."""
    key = poly.key()
    if key in _CACHE:
        return _CACHE[key]
    n = poly.dim
    counts = {}
    sums = {}
    counts[0] = 1
    sums[0] = tuple(0 for _ in range(n))
    for k in range(1, n + 3):
        c, s = _count_and_sum(poly, k)
        counts[k] = c
        sums[k] = s
    _CACHE[key] = (counts, sums)
    return counts, sums


def _count_and_sum(poly, k):
    from .counting import count_and_sum_points

    A = [f.normal for f in poly.facets]
    b = [f.offset * k for f in poly.facets]
    lo, hi = poly.bounding_box(k)
    return count_and_sum_points(A, b, lo, hi)


def ehrhart_polynomial(poly):
    n = poly.dim
    counts, _ = _data(poly)
    pts = [(Fraction(k), Fraction(counts[k])) for k in range(n + 1)]
    coeffs = lagrange_interpolate(pts)
    coeffs = coeffs + [Fraction(0)] * (n + 1 - len(coeffs))
    E = EhrhartPolynomial(tuple(coeffs))
    for k in (n + 1, n + 2):
        if E(k) != counts[k]:
            raise CountMismatch(
                "Ehrhart check failed at k=%d: %s vs %d" % (k, E(k), counts[k]))
    if coeffs[n] != poly.euclidean_volume:
        raise CountMismatch("leading Ehrhart coefficient != volume")
    if n >= 1 and coeffs[n - 1] != poly.boundary_sigma_volume / 2:
        raise CountMismatch("subleading Ehrhart coefficient != sigma-volume/2")
    return E


def sum_polynomial(poly):
    """Interpolates P(i) = i*s(i) (degree n+1, vector valued), returns s."""
    n = poly.dim
    counts, sums = _data(poly)
    coeff_vectors = []
    for j in range(n):
        pts = [(Fraction(i), Fraction(sums[i][j])) for i in range(n + 2)]
        cj = lagrange_interpolate(pts)
        cj = cj + [Fraction(0)] * (n + 2 - len(cj))
        if poly_eval(cj, n + 2) != sums[n + 2][j]:
            raise CountMismatch("sum polynomial check failed at i=%d" % (n + 2))
        coeff_vectors.append(cj)
    # P has zero constant term; s(t) = P(t)/t
    for cj in coeff_vectors:
        if cj[0] != 0:
            raise CountMismatch("sum polynomial has nonzero constant term")
    s_coeffs = tuple(
        tuple(coeff_vectors[j][d + 1] for j in range(n)) for d in range(n + 1))
    # leading coefficient of P = integral of x over Delta
    if s_coeffs[n] != poly.moment:
        raise CountMismatch("leading sum coefficient != moment integral")
    if tuple(2 * x for x in s_coeffs[n - 1]) != poly.boundary_moment:
        raise CountMismatch("subleading sum coefficient != boundary moment / 2")
    return SumPolynomial(s_coeffs)


def futaki_ono_FO(poly, ell, k):
    """FO(ell; k) for an affine function ell = (grad vector, const).

    = (1/chi_k) * sum_{p in k*Delta} ell(p)  -  (1/vol k*Delta) * int ell
    """
    grad, const = ell
    n = poly.dim
    counts, sums = _data(poly)
    if k in counts:
        chi = counts[k]
        s = sums[k]
    else:
        chi, s = _count_and_sum(poly, k)
    avg_points = (sum(Fraction(g) * s[j] for j, g in enumerate(grad)) +
                  Fraction(const) * chi) / chi
    # int over k*Delta: vol = k^n V; moment = k^(n+1) m
    V = poly.euclidean_volume
    m = poly.moment
    avg_int = (sum(Fraction(g) * Fraction(k) ** (n + 1) * m[j]
                   for j, g in enumerate(grad)) +
               Fraction(const) * Fraction(k) ** n * V) / (Fraction(k) ** n * V)
    return avg_points - avg_int


def futaki_ono_vector(poly, j):
    """F_j = vol * s_j - E_j * moment, for j in 1..n."""
    n = poly.dim
    if not (1 <= j <= n):
        raise IndexOutOfRange("j must be in 1..%d" % n)
    E = ehrhart_polynomial(poly)
    s = sum_polynomial(poly)
    V = poly.euclidean_volume
    m = poly.moment
    return tuple(V * s.coefficients[j][c] - E.coefficients[j] * m[c]
                 for c in range(n))


def fo_vanishes(poly):
    """True iff FO(ell; k) = 0 for all affine ell and all k >= 1.

    Decided exactly via the numerator polynomial
    N_j(k) = P_j(k) * k^n * V - k^(n+1) * m_j * E(k)   (degree <= 2n+1),
    evaluated at k = 1..2n+3 from the verified interpolated polynomials.
    """
    n = poly.dim
    E = ehrhart_polynomial(poly)
    s = sum_polynomial(poly)
    V = poly.euclidean_volume
    m = poly.moment
    for j in range(n):
        for k in range(1, 2 * n + 4):
            kf = Fraction(k)
            P_jk = s(k)[j] * kf  # P_j(k) = k * s_j(k)
            N = P_jk * kf ** n * V - kf ** (n + 1) * m[j] * E(k)
            if N != 0:
                return False
    return True
