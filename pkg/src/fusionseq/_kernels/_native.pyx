# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the validation and iteration kernels.

Semantics match ``_fallback`` exactly; inputs are restricted to int64
ranges by the dispatching wrapper, which falls back to the pure-Python
implementations when entries could overflow.
"""


def assoc_defect(const long long[:, :, ::1] n):
    cdef Py_ssize_t r = n.shape[0]
    cdef Py_ssize_t i, j, k, l, m
    cdef long long lhs, rhs
    for i in range(r):
        for j in range(r):
            for k in range(r):
                for l in range(r):
                    lhs = 0
                    rhs = 0
                    for m in range(r):
                        lhs += n[i, j, m] * n[m, k, l]
                        rhs += n[i, m, l] * n[j, k, m]
                    if lhs != rhs:
                        return (i, j, k, l, lhs, rhs)
    return None


def module_assoc_defect(const long long[:, :, ::1] n, const long long[:, :, ::1] a):
    cdef Py_ssize_t r = n.shape[0]
    cdef Py_ssize_t mr = a.shape[1]
    cdef Py_ssize_t i, j, p, q, m, l
    cdef long long lhs, rhs
    for i in range(r):
        for j in range(r):
            for p in range(mr):
                for q in range(mr):
                    lhs = 0
                    for m in range(r):
                        lhs += n[i, j, m] * a[m, p, q]
                    rhs = 0
                    for l in range(mr):
                        rhs += a[j, p, l] * a[i, l, q]
                    if lhs != rhs:
                        return (i, j, p, q, lhs, rhs)
    return None


def hom_defect(const long long[:, :, ::1] nb, const long long[:, :, ::1] nt,
               const long long[:, ::1] f):
    cdef Py_ssize_t rb = nb.shape[0]
    cdef Py_ssize_t rt = nt.shape[0]
    cdef Py_ssize_t i, j, u, m, s, t
    cdef long long lhs, rhs, fsi, ftj
    cdef long long[:, ::1] lm
    import numpy as np
    lm_arr = np.zeros((rt, rt), dtype=np.int64)
    lm = lm_arr
    for i in range(rb):
        for t in range(rt):
            for u in range(rt):
                lm[t, u] = 0
        for s in range(rt):
            fsi = f[s, i]
            if fsi == 0:
                continue
            for t in range(rt):
                for u in range(rt):
                    if nt[s, t, u] != 0:
                        lm[t, u] += fsi * nt[s, t, u]
        for j in range(rb):
            for u in range(rt):
                lhs = 0
                for m in range(rb):
                    if nb[i, j, m] != 0:
                        lhs += nb[i, j, m] * f[u, m]
                rhs = 0
                for t in range(rt):
                    ftj = f[t, j]
                    if ftj != 0:
                        rhs += ftj * lm[t, u]
                if lhs != rhs:
                    return (i, j, u, lhs, rhs)
    return None


def power_iteration(const double[:, ::1] m, const double[::1] v0, long max_iter,
                    double rtol):
    cdef Py_ssize_t n = m.shape[0]
    cdef Py_ssize_t i, j
    cdef long it = 0
    cdef double s, acc, delta, d
    import numpy as np
    v_arr = np.empty(n, dtype=np.float64)
    w_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] v = v_arr
    cdef double[::1] w = w_arr
    s = 0.0
    for i in range(n):
        v[i] = v0[i]
        s += v0[i]
    for i in range(n):
        v[i] /= s
    while it < max_iter:
        s = 0.0
        for i in range(n):
            acc = 0.0
            for j in range(n):
                acc += m[i, j] * v[j]
            w[i] = acc
            s += acc
        if s == 0.0:
            return list(v_arr), it
        delta = 0.0
        for i in range(n):
            w[i] /= s
            d = w[i] - v[i]
            if d < 0:
                d = -d
            if d > delta:
                delta = d
            v[i] = w[i]
        it += 1
        if delta < rtol:
            break
    return list(v_arr), it
