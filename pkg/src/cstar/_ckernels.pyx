# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled lattice point kernel; mirrors ``_pykernels.count_sections``."""


# C division truncates toward zero; correct it to floor
cdef inline long long floordiv(long long a, long long b):
    cdef long long q = a // b
    if (a % b != 0) and ((a < 0) != (b < 0)):
        q -= 1
    return q


cdef inline long long ceildiv(long long a, long long b):
    return -floordiv(-a, b)


def count_sections(px_in, py_in, a_in):
    cdef Py_ssize_t n = len(px_in)
    cdef long long[64] px
    cdef long long[64] py
    cdef long long[64] a
    cdef Py_ssize_t i, j, k
    cdef long long d, nx, ny, lo_num = 0, lo_den = 1, hi_num = 0, hi_den = 1
    cdef long long x, xmin, xmax, ylo, yhi, rhs, q, v, total = 0
    cdef bint have = False, ok, empty, has_lo, has_hi
    if n > 64:
        raise ValueError("too many rays")
    for i in range(n):
        px[i] = px_in[i]
        py[i] = py_in[i]
        a[i] = a_in[i]
    for i in range(n):
        for j in range(i + 1, n):
            d = px[i] * py[j] - px[j] * py[i]
            if d == 0:
                continue
            nx = -a[i] * py[j] + a[j] * py[i]
            ny = -px[i] * a[j] + px[j] * a[i]
            if d < 0:
                d = -d
                nx = -nx
                ny = -ny
            ok = True
            for k in range(n):
                if px[k] * nx + py[k] * ny < -a[k] * d:
                    ok = False
                    break
            if not ok:
                continue
            if not have:
                lo_num = nx
                lo_den = d
                hi_num = nx
                hi_den = d
                have = True
            else:
                if nx * lo_den < lo_num * d:
                    lo_num = nx
                    lo_den = d
                if nx * hi_den > hi_num * d:
                    hi_num = nx
                    hi_den = d
    if not have:
        return 0
    xmin = ceildiv(lo_num, lo_den)
    xmax = floordiv(hi_num, hi_den)
    x = xmin
    while x <= xmax:
        has_lo = False
        has_hi = False
        ylo = 0
        yhi = 0
        empty = False
        for k in range(n):
            rhs = -a[k] - px[k] * x
            q = py[k]
            if q > 0:
                v = ceildiv(rhs, q)
                if not has_lo or v > ylo:
                    ylo = v
                    has_lo = True
            elif q < 0:
                v = floordiv(rhs, q)
                if not has_hi or v < yhi:
                    yhi = v
                    has_hi = True
            elif rhs > 0:
                empty = True
                break
        if not empty and has_lo and has_hi and yhi >= ylo:
            total += yhi - ylo + 1
        x += 1
    return total
