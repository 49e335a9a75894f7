"""Lattice-point enumeration, counting and coordinate sums for a region
{x in Z^n : A x + b >= 0} inside an integer bounding box.

enumerate_points is a plain Python recursion (used whenever the actual
points are needed; desk scale). count_points / sum_points use a vectorized
int64 prefix scan so that dilations with ~10^8 points stay exact and fast:
the innermost coordinate is never enumerated, only counted via interval
lengths and arithmetic series.
"""

from __future__ import annotations

import numpy as np

_ROW_CAP = 2_000_000


def _prep(A, b, lo, hi):
    A = [tuple(int(x) for x in row) for row in A]
    b = [int(x) for x in b]
    lo = [int(x) for x in lo]
    hi = [int(x) for x in hi]
    return A, b, lo, hi


def enumerate_points(A, b, lo, hi):
    """All integer points with A x + b >= 0 and lo <= x <= hi, lex sorted."""
    A, b, lo, hi = _prep(A, b, lo, hi)
    n = len(lo)
    m = len(A)
    out = []

    def rec(prefix):
        j = len(prefix)
        lo_j, hi_j = lo[j], hi[j]
        for i in range(m):
            row = A[i]
            if any(row[c] != 0 for c in range(j + 1, n)):
                continue
            rest = sum(row[c] * prefix[c] for c in range(j)) + b[i]
            a = row[j]
            if a == 0:
                if rest < 0:
                    return
                continue
            if a > 0:
                # a*x_j + rest >= 0  ->  x_j >= ceil(-rest/a) = -floor(rest/a)
                lo_j = max(lo_j, -(rest // a))
            else:
                # a*x_j >= -rest  ->  x_j <= floor(rest / -a)
                hi_j = min(hi_j, rest // (-a))
        if j == n - 1:
            for x in range(lo_j, hi_j + 1):
                out.append(prefix + (x,))
        else:
            for x in range(lo_j, hi_j + 1):
                rec(prefix + (x,))

    rec(())
    return out


def _scan(A, b, lo, hi, want_sums):
    """Returns (count, sums vector) as Python ints."""
    A, b, lo, hi = _prep(A, b, lo, hi)
    n = len(lo)
    m = len(A)
    if n == 1:
        lo_0, hi_0 = lo[0], hi[0]
        for i in range(m):
            a = A[i][0]
            if a > 0:
                lo_0 = max(lo_0, (-b[i] + a - 1) // a)
            elif a < 0:
                hi_0 = min(hi_0, b[i] // (-a))
            elif b[i] < 0:
                return 0, (0,)
        cnt = max(0, hi_0 - lo_0 + 1)
        s = (lo_0 + hi_0) * cnt // 2 if cnt else 0
        return cnt, (s,)

    An = np.array(A, dtype=np.int64)
    bn = np.array(b, dtype=np.int64)

    # facet rows usable as bounds at stage j: zero coefficients after j
    stage_rows = [[] for _ in range(n)]
    for i in range(m):
        last = max((c for c in range(n) if A[i][c] != 0), default=-1)
        if last >= 0:
            stage_rows[last].append(i)
    # rows that are pure feasibility checks at stage j (A[i][j] == 0 handled
    # implicitly because last < j never happens for them; rows with all-zero A)
    for i in range(m):
        if all(A[i][c] == 0 for c in range(n)) and b[i] < 0:
            return 0, tuple(0 for _ in range(n))

    count = 0
    sums = [0] * n

    def bounds_for(prefixes, j):
        rows = stage_rows[j]
        npref = prefixes.shape[0]
        lo_j = np.full(npref, lo[j], dtype=np.int64)
        hi_j = np.full(npref, hi[j], dtype=np.int64)
        for i in rows:
            a = int(An[i, j])
            rest = prefixes @ An[i, :j] + int(bn[i])
            if a > 0:
                # x >= ceil(-rest/a) = -floor(rest/a)
                cand = -(rest // a)
                np.maximum(lo_j, cand, out=lo_j)
            else:
                cand = rest // (-a)
                np.minimum(hi_j, cand, out=hi_j)
        return lo_j, hi_j

    def process(prefixes, j):
        nonlocal count
        if j == n - 1:
            lo_j, hi_j = bounds_for(prefixes, j)
            cnt = hi_j - lo_j + 1
            np.maximum(cnt, 0, out=cnt)
            count += int(cnt.sum())
            if want_sums:
                mask = cnt > 0
                c2 = cnt[mask]
                sums[j] += int((((lo_j[mask] + hi_j[mask]) * c2) // 2).sum())
                for c in range(j):
                    sums[c] += int((prefixes[mask, c] * c2).sum())
            return
        lo_j, hi_j = bounds_for(prefixes, j)
        cnt = hi_j - lo_j + 1
        np.maximum(cnt, 0, out=cnt)
        mask = cnt > 0
        prefixes = prefixes[mask]
        lo_j = lo_j[mask]
        cnt = cnt[mask]
        total = int(cnt.sum())
        if total == 0:
            return
        if total > _ROW_CAP and prefixes.shape[0] > 1:
            half = prefixes.shape[0] // 2
            process(np.ascontiguousarray(prefixes[:half]), j)
            process(np.ascontiguousarray(prefixes[half:]), j)
            return
        reps = np.repeat(np.arange(prefixes.shape[0]), cnt)
        offs = np.arange(total, dtype=np.int64) - np.repeat(
            np.cumsum(cnt) - cnt, cnt)
        newcol = lo_j[reps] + offs
        expanded = np.empty((total, j + 1), dtype=np.int64)
        if j > 0:
            expanded[:, :j] = prefixes[reps]
        expanded[:, j] = newcol
        process(expanded, j + 1)

    start = np.zeros((1, 0), dtype=np.int64)
    # chunk over the first coordinate to bound memory
    lo0 = np.full(1, lo[0], dtype=np.int64)
    hi0 = np.full(1, hi[0], dtype=np.int64)
    l0, h0 = bounds_for(start, 0)
    l0, h0 = int(l0[0]), int(h0[0])
    if n == 1 or l0 > h0:
        if l0 <= h0:
            process(start, 0)
        return count, tuple(sums)
    for x0 in range(l0, h0 + 1):
        pref = np.array([[x0]], dtype=np.int64)
        process(pref, 1)
    return count, tuple(sums)


def count_points(A, b, lo, hi):
    return _scan(A, b, lo, hi, want_sums=False)[0]


def sum_points(A, b, lo, hi):
    return _scan(A, b, lo, hi, want_sums=True)[1]


def count_and_sum_points(A, b, lo, hi):
    return _scan(A, b, lo, hi, want_sums=True)
