"""Smooth complete toric surfaces given by self-intersection sequences.

A surface is a cyclic sequence ``b = (b_0, ..., b_l)`` where the invariant
divisor ``D_i`` has self-intersection ``-b_i`` and the rays satisfy
``b_i * rho_i = rho_{i-1} + rho_{i+1}``.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .errors import InternalInconsistency, NotASurface, NotContractible, PreconditionViolated
from .kernels import h0_count


class _Undefined:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "Undefined"

    def __bool__(self):
        return False


Undefined = _Undefined()


def cf_eval(c):
    """Evaluate ``[c_1, ..., c_k] = c_1 - 1/[c_2, ..., c_k]``.

    Returns :data:`Undefined` when the recursion divides by zero.
    """
    c = list(c)
    if not c:
        raise PreconditionViolated("continued fraction needs at least one entry")
    val = Fraction(c[-1])
    for x in reversed(c[:-1]):
        if val == 0:
            return Undefined
        val = x - 1 / val
    return val


# ---------------------------------------------------------------- geometry


def det2(u, v):
    return u[0] * v[1] - u[1] * v[0]


def _half(v):
    # 0 for angles in [0, pi), 1 for [pi, 2pi)
    return 0 if (v[1] > 0 or (v[1] == 0 and v[0] > 0)) else 1


def angle_less(u, v):
    """Strict counterclockwise angle comparison on [0, 2pi)."""
    hu, hv = _half(u), _half(v)
    if hu != hv:
        return hu < hv
    return det2(u, v) > 0


def sort_ccw(vectors):
    """Sort integer vectors by angle in [0, 2pi) without floating point."""
    import functools

    def cmp(u, v):
        if angle_less(u, v):
            return -1
        if angle_less(v, u):
            return 1
        return 0

    return sorted(vectors, key=functools.cmp_to_key(cmp))


def winding_number(rays):
    """Number of full turns made by a cyclic ray sequence with ccw steps."""
    n = len(rays)
    return sum(1 for i in range(n) if not angle_less(rays[i], rays[(i + 1) % n]))


@dataclass(frozen=True)
class ToricSurface:
    b: tuple
    rays: Optional[tuple] = field(default=None, compare=False)

    @property
    def l(self):
        return len(self.b) - 1

    @property
    def n_rays(self):
        return len(self.b)

    @property
    def picard_number(self):
        return len(self.b) - 2

    def to_dict(self):
        return {"b": list(self.b)}

    def __repr__(self):
        return "ToricSurface(%s)" % (self.b,)


def _close_rays(b):
    b = [int(x) for x in b]
    if len(b) < 3:
        raise NotASurface("need at least three rays, got %d" % len(b))
    rays = [(1, 0), (0, 1)]
    for i in range(1, len(b)):
        p, q = rays[i - 1], rays[i]
        rays.append((b[i] * q[0] - p[0], b[i] * q[1] - p[1]))
    return b, rays


def rays_from_b(b):
    """Realize ``b`` as a fan with seeds ``(1,0), (0,1)``.

    Raises :class:`NotASurface` if the recursion does not close up to a
    smooth complete fan.
    """
    b, rays = _close_rays(b)
    n = len(b)
    if rays[n] != rays[0]:
        raise NotASurface("ray recursion does not close: rho_%d = %s" % (n, rays[n]))
    rays = rays[:n]
    r0 = rays[0]
    if (b[0] * r0[0], b[0] * r0[1]) != (rays[-1][0] + rays[1][0], rays[-1][1] + rays[1][1]):
        raise NotASurface("recursion fails at index 0")
    if winding_number(rays) != 1:
        raise NotASurface("fan winds %d times" % winding_number(rays))
    return ToricSurface(tuple(b), tuple(rays))


def b_from_rays(rays):
    """Self-intersection sequence of a smooth complete fan given ccw rays."""
    n = len(rays)
    out = []
    for i in range(n):
        p, q, s = rays[i - 1], rays[i], rays[(i + 1) % n]
        if det2(q, s) != 1:
            raise NotASurface("cone %d is not unimodular" % i)
        t = (p[0] + s[0], p[1] + s[1])
        if det2(t, q) != 0:
            raise NotASurface("rays %d are not a smooth fan" % i)
        bi = t[0] // q[0] if q[0] else t[1] // q[1]
        out.append(bi)
    if winding_number(rays) != 1:
        raise NotASurface("fan is not complete")
    return tuple(out)


def as_surface(X):
    if isinstance(X, ToricSurface):
        return X if X.rays is not None else rays_from_b(X.b)
    return rays_from_b(X)


@dataclass
class Report:
    ok: bool
    failures: list
    info: dict

    def to_dict(self):
        return {"ok": self.ok, "failures": list(self.failures), **self.info}


def validate_toric(X):
    """Check the sum rule, smoothness and completeness of ``X``."""
    b = list(X.b if isinstance(X, ToricSurface) else X)
    failures = []
    info = {"b": b}
    if len(b) < 3:
        return Report(False, ["fewer than three rays"], info)
    l = len(b) - 1
    info["sum_b"] = sum(b)
    info["expected_sum"] = 3 * l - 9
    if sum(b) != 3 * l - 9:
        failures.append("sum rule: %d != %d" % (sum(b), 3 * l - 9))
    _, rays = _close_rays(b)
    if rays[len(b)] != rays[0]:
        failures.append("ray recursion does not close")
    else:
        rr = rays[: len(b)]
        if (b[0], 0) != (rr[-1][0] + rr[1][0], rr[-1][1] + rr[1][1]):
            failures.append("recursion fails at index 0")
        w = winding_number(rr)
        if w != 1:
            failures.append("fan winds %d times (not complete)" % w)
    ok = not failures
    if ok:
        info["picard_number"] = l - 1
    return Report(ok, failures, info)


# ---------------------------------------------------------------- alpha, gamma


@dataclass(frozen=True)
class AlphaGamma:
    alpha: int
    gamma: int


def alpha_gamma(X):
    """Index ``alpha`` with ``rho_alpha = -rho_0`` and the defect ``gamma``."""
    X = as_surface(X)
    b = X.b
    l = X.l
    if b[0] >= 0 or l <= 2:
        raise PreconditionViolated("alpha/gamma need b_0 < 0 and l > 2")
    found = [a for a in range(2, l) if cf_eval(b[1:a]) == 0]
    if len(found) != 1:
        raise InternalInconsistency("expected a unique alpha, found %s" % found)
    alpha = found[0]
    gamma = sum(3 - b[i] for i in range(1, alpha)) - 3
    rho0 = X.rays[0]
    if X.rays[alpha] != (-rho0[0], -rho0[1]):
        raise InternalInconsistency("rho_alpha != -rho_0")
    if gamma < 0 or b[0] + b[alpha] - gamma < 0:
        raise InternalInconsistency("gamma bounds violated")
    return AlphaGamma(alpha, gamma)


# ---------------------------------------------------------------- moves


def toric_blowup(X, i):
    """Insert a ray between positions ``i`` and ``i+1`` (cyclically)."""
    b = list(X.b if isinstance(X, ToricSurface) else X)
    n = len(b)
    i %= n
    j = (i + 1) % n
    b[i] += 1
    b[j] += 1
    b.insert(i + 1, 1)
    return rays_from_b(b)


def toric_blowdown(X, i):
    """Contract the (-1)-curve ``D_i``."""
    b = list(X.b if isinstance(X, ToricSurface) else X)
    n = len(b)
    i %= n
    if n <= 3:
        raise NotContractible("P^2 has no invariant (-1)-curves")
    if b[i] != 1:
        raise NotContractible("b_%d = %d, need 1" % (i, b[i]))
    b[(i - 1) % n] -= 1
    b[(i + 1) % n] -= 1
    del b[i]
    return rays_from_b(b)


def minus_one_indices(X):
    b = X.b if isinstance(X, ToricSurface) else tuple(X)
    if len(b) <= 3:
        return []
    return [i for i, x in enumerate(b) if x == 1]


def deformation_general_fiber(X, r):
    """Toric general fiber of the homogeneous deformation with parameter ``r``."""
    X = as_surface(X)
    b = X.b
    if b[0] >= 0 or X.l <= 2:
        raise PreconditionViolated("need b_0 < 0 and l > 2")
    if not 0 <= r <= -b[0]:
        raise PreconditionViolated("need 0 <= r <= %d, got %d" % (-b[0], r))
    ag = alpha_gamma(X)
    a, g = ag.alpha, ag.gamma
    out = [b[0] + g + 2 * r] + [b[i] for i in range(a - 1, 0, -1)] + [b[a] - g - 2 * r] + list(b[a + 1 :])
    Y = rays_from_b(out)
    if sum(out) != sum(b):
        raise InternalInconsistency("sum of b changed")
    return Y


# ---------------------------------------------------------------- intersection theory


def intersection_matrix(X):
    b = X.b if isinstance(X, ToricSurface) else tuple(X)
    n = len(b)
    T = [[0] * n for _ in range(n)]
    for i in range(n):
        T[i][i] = -b[i]
        T[i][(i + 1) % n] += 1
        T[(i + 1) % n][i] += 1
    if n == 3:
        # neighbours coincide pairwise; each pair meets once
        for i in range(n):
            for j in range(n):
                if i != j:
                    T[i][j] = 1
    return T


def intersection(X, D, E):
    T = intersection_matrix(X)
    n = len(T)
    return sum(D[i] * T[i][j] * E[j] for i in range(n) for j in range(n))


def canonical(X):
    return tuple([-1] * len(X.b if isinstance(X, ToricSurface) else X))


def euler_char(X, D):
    K = canonical(X)
    d2 = intersection(X, D, D)
    kd = intersection(X, K, D)
    if (d2 - kd) % 2:
        raise InternalInconsistency("D^2 - K.D is odd")
    return 1 + (d2 - kd) // 2


def h0(X, D):
    """Number of lattice points of the section polygon of ``D``."""
    X = as_surface(X)
    px = [r[0] for r in X.rays]
    py = [r[1] for r in X.rays]
    return h0_count(px, py, [int(a) for a in D])


def cohomology(X, D):
    """``(h0, h1, h2)`` of ``O(D)``; ``h1`` from Riemann-Roch."""
    X = as_surface(X)
    D = [int(a) for a in D]
    if len(D) != X.n_rays:
        raise PreconditionViolated("divisor has %d coefficients, surface has %d rays" % (len(D), X.n_rays))
    a0 = h0(X, D)
    a2 = h0(X, [-1 - a for a in D])
    chi = euler_char(X, D)
    a1 = a0 + a2 - chi
    if a1 < 0:
        raise InternalInconsistency("negative h1 for %s on %s" % (D, X.b))
    return (a0, a1, a2)


# ---------------------------------------------------------------- symmetry


def dihedral_images(b):
    """All rotations and reflections as ``(sequence, index_map)`` pairs.

    ``index_map[k]`` is the original index placed at position ``k``.
    """
    n = len(b)
    out = []
    for s in range(n):
        idx = [(s + k) % n for k in range(n)]
        out.append((tuple(b[i] for i in idx), tuple(idx)))
        ridx = [(s - k) % n for k in range(n)]
        out.append((tuple(b[i] for i in ridx), tuple(ridx)))
    return out


def canonical_form(b):
    b = X_b(b)
    return min(img for img, _ in dihedral_images(b))


def X_b(X):
    return tuple(X.b) if isinstance(X, ToricSurface) else tuple(X)


def is_isomorphic(X, Y):
    a, b = X_b(X), X_b(Y)
    return len(a) == len(b) and canonical_form(a) == canonical_form(b)


def find_isomorphisms(X, Y):
    """All index maps ``m`` (source index -> target index) with ``Y.b[m[i]] == X.b[i]``."""
    a, b = X_b(X), X_b(Y)
    if len(a) != len(b):
        return []
    out = []
    for img, idx in dihedral_images(b):
        if img == a:
            # position k of image holds original index idx[k] of Y
            out.append(tuple(idx))
    return out


def hirzebruch(r):
    """``F_r`` as ``(0, r, 0, -r)``; ``D_2`` is a fiber and ``D_3`` has square ``r``."""
    return rays_from_b((0, r, 0, -r))


def hirzebruch_index(X):
    """``r`` with ``X`` isomorphic to ``F_r``; requires four rays."""
    b = X_b(X)
    if len(b) != 4:
        raise PreconditionViolated("not a Hirzebruch surface: %s" % (b,))
    r = max(abs(x) for x in b)
    if not is_isomorphic(b, (0, r, 0, -r)):
        raise InternalInconsistency("four-ray surface %s is not Hirzebruch" % (b,))
    return r


def enumerate_surfaces(n_rays, lo, hi):
    """Canonical forms of all smooth complete toric surfaces with ``n_rays``
    rays and all entries in ``[lo, hi]``.

    Built by blowing up, since every such surface with at least five rays
    contracts to one with fewer rays.
    """
    if n_rays < 3:
        return []
    if n_rays == 3:
        base = {canonical_form((-1, -1, -1))}
        return sorted(x for x in base if all(lo <= v <= hi for v in x))
    # blowups only raise entries, so intermediate maxima are bounded by hi and
    # intermediate minima by lo minus the number of remaining blowups
    depth = n_rays - 4
    layer = set()
    for r in range(0, min(hi, depth - lo) + 1):
        layer.add(canonical_form((0, r, 0, -r)))
    for k in range(depth):
        bound = lo - (depth - k - 1)
        nxt = set()
        for b in layer:
            for i in range(len(b)):
                c = list(b)
                j = (i + 1) % len(c)
                c[i] += 1
                c[j] += 1
                c.insert(i + 1, 1)
                if min(c) >= bound and max(c) <= hi:
                    nxt.add(canonical_form(c))
        layer = nxt
    return sorted(x for x in layer if all(lo <= v <= hi for v in x))
