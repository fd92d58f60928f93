# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled pivot loop for the dense tableau simplex.

Same contract as persuade._simplex.pivot_loop; see that module for the
specification.  Selected at import time by persuade._kernel.
"""


def pivot_loop(double[:, ::1] T, long long[::1] basis, double tol,
               long max_iter, long bland_after):
    cdef Py_ssize_t m = T.shape[0] - 1
    cdef Py_ssize_t n = T.shape[1] - 1
    cdef Py_ssize_t e, r, i, j
    cdef long it, streak = 0
    cdef double best_cost, ratio, best, piv, f, rhs, tie
    cdef bint bland, found

    for it in range(max_iter):
        bland = streak >= bland_after
        e = -1
        if bland:
            for j in range(n):
                if T[m, j] < -tol:
                    e = j
                    break
            if e < 0:
                return 0
        else:
            best_cost = -tol
            for j in range(n):
                if T[m, j] < best_cost:
                    best_cost = T[m, j]
                    e = j
            if e < 0:
                return 0

        best = -1.0
        for i in range(m):
            if T[i, e] > tol:
                rhs = T[i, n]
                if rhs < 0.0:
                    rhs = 0.0
                ratio = rhs / T[i, e]
                if best < 0.0 or ratio < best:
                    best = ratio
        if best < 0.0:
            return 1
        tie = best + 1e-15 * (1.0 + best)
        r = -1
        for i in range(m):
            if T[i, e] > tol:
                rhs = T[i, n]
                if rhs < 0.0:
                    rhs = 0.0
                ratio = rhs / T[i, e]
                if ratio <= tie:
                    if r < 0 or basis[i] < basis[r]:
                        r = i
        if best <= tol:
            streak += 1
        else:
            streak = 0

        piv = T[r, e]
        for j in range(n + 1):
            T[r, j] /= piv
        for i in range(m + 1):
            if i == r:
                continue
            f = T[i, e]
            if f != 0.0:
                for j in range(n + 1):
                    T[i, j] -= f * T[r, j]
        for i in range(m + 1):
            T[i, e] = 0.0
        T[r, e] = 1.0
        basis[r] = e
    return 2


from libc.math cimport fabs


def lower_hull(double[::1] x, double[::1] y, long long[::1] out):
    """Lower convex hull of points pre-sorted by (x, y); writes vertex
    indices into ``out`` and returns the hull size.  Nearly collinear
    middle points are dropped (relative cross-product tolerance 1e-12)."""
    cdef Py_ssize_t n = x.shape[0]
    cdef Py_ssize_t m = 0, i
    cdef double ox, oy, ax, ay, c, scale
    for i in range(n):
        if m > 0 and x[out[m - 1]] == x[i]:
            continue
        while m >= 2:
            ox = x[out[m - 2]]; oy = y[out[m - 2]]
            ax = x[out[m - 1]]; ay = y[out[m - 1]]
            c = (ax - ox) * (y[i] - oy) - (ay - oy) * (x[i] - ox)
            scale = fabs(ax - ox) * fabs(y[i] - oy) + fabs(ay - oy) * fabs(x[i] - ox) + 1e-300
            if c <= 1e-12 * scale:
                m -= 1
            else:
                break
        out[m] = i
        m += 1
    return m
