"""Pure-Python lattice point kernel (fallback for the compiled core)."""


def count_sections(px, py, a):
    """Number of integer points u with px[i]*u0 + py[i]*u1 >= -a[i] for all i.

    The rays (px[i], py[i]) must span a complete fan so the polygon is bounded.
    """
    n = len(px)
    have = False
    lo_num = hi_num = 0
    lo_den = hi_den = 1
    for i in range(n):
        for j in range(i + 1, n):
            d = px[i] * py[j] - px[j] * py[i]
            if d == 0:
                continue
            nx = -a[i] * py[j] + a[j] * py[i]
            ny = -px[i] * a[j] + px[j] * a[i]
            if d < 0:
                d, nx, ny = -d, -nx, -ny
            ok = True
            for k in range(n):
                if px[k] * nx + py[k] * ny < -a[k] * d:
                    ok = False
                    break
            if not ok:
                continue
            if not have:
                lo_num, lo_den, hi_num, hi_den = nx, d, nx, d
                have = True
            else:
                if nx * lo_den < lo_num * d:
                    lo_num, lo_den = nx, d
                if nx * hi_den > hi_num * d:
                    hi_num, hi_den = nx, d
    if not have:
        return 0
    xmin = -((-lo_num) // lo_den)
    xmax = hi_num // hi_den
    total = 0
    for x in range(xmin, xmax + 1):
        ylo = None
        yhi = None
        empty = False
        for k in range(n):
            rhs = -a[k] - px[k] * x
            q = py[k]
            if q > 0:
                v = -((-rhs) // q)
                if ylo is None or v > ylo:
                    ylo = v
            elif q < 0:
                v = (-rhs) // (-q)
                if yhi is None or v < yhi:
                    yhi = v
            elif rhs > 0:
                empty = True
                break
        if empty or ylo is None or yhi is None:
            continue
        if yhi >= ylo:
            total += yhi - ylo + 1
    return total
