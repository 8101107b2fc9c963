"""Multidivisors of complete rational C*-surfaces.

A multidivisor stores finitely many slices (finite subdivisions of the
rational line) over points of the projective line together with two
boundary markers.  Points without a stored slice carry the trivial slice
``{0}``.
"""

from dataclasses import dataclass
from fractions import Fraction

from .errors import NotASurface, NotSmooth, NotToric, ParseError, PreconditionViolated
from .toric_core import Report, b_from_rays, det2, rays_from_b, sort_ccw

CIRC = "circ"
BULLET = "bullet"
INF = "inf"

# ---------------------------------------------------------------- rationals and points


def parse_rat(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise ParseError("not a rational: %r" % (x,))
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError):
            raise ParseError("not a rational: %r" % (x,)) from None
    raise ParseError("not a rational: %r" % (x,))


def fmt_rat(q):
    return str(Fraction(q))


def parse_point(x):
    if isinstance(x, str) and x.strip().lower() in ("inf", "infinity", "∞"):
        return INF
    return parse_rat(x)


def fmt_point(p):
    return INF if p == INF else fmt_rat(p)


def point_key(p):
    return (1, Fraction(0)) if p == INF else (0, Fraction(p))


def height(v):
    """The denominator of ``v`` in lowest terms."""
    return Fraction(v).denominator


# ---------------------------------------------------------------- prime divisors


@dataclass(frozen=True)
class PrimeDiv:
    kind: str
    point: object = None
    v: Fraction = None

    def __repr__(self):
        if self.kind == "vertex":
            return "D(%s,%s)" % (fmt_rat(self.v), fmt_point(self.point))
        return {"minus": "D-", "plus": "D+", "fiber": "F"}[self.kind]

    def to_dict(self):
        if self.kind == "vertex":
            return {"kind": "vertex", "point": fmt_point(self.point), "v": fmt_rat(self.v)}
        return {"kind": self.kind}


def VertexDiv(point, v):
    return PrimeDiv("vertex", point, Fraction(v))


DMinus = PrimeDiv("minus")
DPlus = PrimeDiv("plus")
GenericFiber = PrimeDiv("fiber")

_KIND_ORDER = {"vertex": 0, "minus": 1, "plus": 2, "fiber": 3}


def prime_key(d):
    if d.kind == "vertex":
        return (0, point_key(d.point), d.v)
    return (_KIND_ORDER[d.kind], (0, Fraction(0)), Fraction(0))


class WeilDiv(dict):
    """Finite integer combination of prime divisors."""

    def __init__(self, *args, **kw):
        super().__init__(*args, **kw)
        for k in [k for k, v in self.items() if v == 0]:
            del self[k]

    def __add__(self, other):
        out = dict(self)
        for k, v in other.items():
            out[k] = out.get(k, 0) + v
        return WeilDiv(out)

    def __sub__(self, other):
        return self + (-1) * other

    def __mul__(self, c):
        return WeilDiv({k: c * v for k, v in self.items()})

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1

    def __repr__(self):
        parts = ["%d*%r" % (v, k) for k, v in sorted(self.items(), key=lambda kv: prime_key(kv[0]))]
        return "WeilDiv(%s)" % " + ".join(parts)


def prime(d):
    return WeilDiv({d: 1})


# ---------------------------------------------------------------- the data type


@dataclass(frozen=True)
class Multidivisor:
    slices: tuple
    minus: str = CIRC
    plus: str = CIRC

    @staticmethod
    def make(slices, minus=CIRC, plus=CIRC):
        """Normalize: parse labels, sort vertices, drop trivial slices."""
        items = slices.items() if isinstance(slices, dict) else slices
        store = {}
        for p, verts in items:
            p = parse_point(p)
            if p in store:
                raise ParseError("duplicate point %s" % fmt_point(p))
            vs = tuple(sorted(parse_rat(v) for v in verts))
            if vs == (Fraction(0),):
                continue
            store[p] = vs
        if minus not in (CIRC, BULLET) or plus not in (CIRC, BULLET):
            raise ParseError("markers must be 'circ' or 'bullet'")
        return Multidivisor(tuple(sorted(store.items(), key=lambda kv: point_key(kv[0]))), minus, plus)

    def slice(self, p):
        for q, vs in self.slices:
            if q == p:
                return vs
        return (Fraction(0),)

    def points(self):
        return [p for p, _ in self.slices]

    def replace_slice(self, p, verts):
        d = dict(self.slices)
        d[p] = tuple(verts)
        return Multidivisor.make(d, self.minus, self.plus)

    def remove_slice(self, p):
        d = {q: vs for q, vs in self.slices if q != p}
        return Multidivisor.make(d, self.minus, self.plus)

    def with_marker(self, side, value):
        if side == "minus":
            return Multidivisor(self.slices, value, self.plus)
        if side == "plus":
            return Multidivisor(self.slices, self.minus, value)
        raise PreconditionViolated("side must be 'minus' or 'plus'")

    def marker(self, side):
        return self.minus if side == "minus" else self.plus

    def fresh_point(self):
        used = set(self.points())
        k = 0
        while Fraction(k) in used:
            k += 1
        return Fraction(k)

    def to_dict(self):
        return {
            "slices": [{"point": fmt_point(p), "vertices": [fmt_rat(v) for v in vs]} for p, vs in self.slices],
            "minus": self.minus,
            "plus": self.plus,
        }

    def __repr__(self):
        body = ", ".join("%s:{%s}" % (fmt_point(p), ",".join(fmt_rat(v) for v in vs)) for p, vs in self.slices)
        return "Multidivisor(%s; %s,%s)" % (body, self.minus, self.plus)


def multidivisor_from_dict(d):
    try:
        slices = [(s["point"], s["vertices"]) for s in d.get("slices", [])]
        return Multidivisor.make(slices, d.get("minus", CIRC), d.get("plus", CIRC))
    except (KeyError, TypeError, AttributeError) as exc:
        raise ParseError("malformed multidivisor: %s" % exc) from None


# ---------------------------------------------------------------- validity and smoothness


def validate(M):
    """Structural checks and the degree conditions for ``circ`` markers."""
    failures = []
    for p, vs in M.slices:
        if not vs:
            failures.append("empty slice at %s" % fmt_point(p))
        elif any(a >= b for a, b in zip(vs, vs[1:])):
            failures.append("slice at %s not strictly increasing" % fmt_point(p))
    smin = sum((min(vs) for _, vs in M.slices if vs), Fraction(0))
    smax = sum((max(vs) for _, vs in M.slices if vs), Fraction(0))
    if M.minus == CIRC and not smin < 0:
        failures.append("degree condition: sum of minima %s is not < 0" % fmt_rat(smin))
    if M.plus == CIRC and not smax > 0:
        failures.append("degree condition: sum of maxima %s is not > 0" % fmt_rat(smax))
    info = {"sum_min": fmt_rat(smin), "sum_max": fmt_rat(smax)}
    return Report(not failures, failures, info)


def _elliptic_ok(extremes, sign):
    """Boundary condition at an elliptic fixed point.

    ``extremes`` are the extreme vertices on one side (one per stored slice);
    ``sign`` is -1 on the left and +1 on the right.
    """
    frac = [v for v in extremes if v.denominator > 1]
    if len(frac) > 2:
        return False
    total = sum((v for v in extremes if v.denominator == 1), Fraction(0))
    n = int(total)
    if len(frac) == 2:
        (u1, v1), (u2, v2) = [(f.numerator, f.denominator) for f in frac]
        return sign * (u1 * v2 + u2 * v1 + v1 * v2 * n) == 1
    if len(frac) == 1:
        u, v = frac[0].numerator, frac[0].denominator
        return sign * (u + v * n) == 1
    return sign * n == 1


def smoothness_failures(M):
    out = []
    for p, vs in M.slices:
        for a, b in zip(vs, vs[1:]):
            if height(a) * height(b) * (b - a) != 1:
                out.append("hyperbolic point between %s and %s at %s" % (fmt_rat(a), fmt_rat(b), fmt_point(p)))
    mins = [min(vs) for _, vs in M.slices if vs]
    maxs = [max(vs) for _, vs in M.slices if vs]
    if M.minus == BULLET:
        if any(v.denominator > 1 for v in mins):
            out.append("parabolic curve D- meets a non-integral vertex")
    elif not _elliptic_ok(mins, -1):
        out.append("elliptic point on the left is singular")
    if M.plus == BULLET:
        if any(v.denominator > 1 for v in maxs):
            out.append("parabolic curve D+ meets a non-integral vertex")
    elif not _elliptic_ok(maxs, +1):
        out.append("elliptic point on the right is singular")
    return out


def is_smooth(M):
    return validate(M).ok and not smoothness_failures(M)


# ---------------------------------------------------------------- divisors and rank


def invariant_prime_divisors(M):
    out = [VertexDiv(p, v) for p, vs in M.slices for v in vs]
    if M.minus == BULLET:
        out.append(DMinus)
    if M.plus == BULLET:
        out.append(DPlus)
    out.append(GenericFiber)
    return out


def picard_rank(M):
    return sum(len(vs) - 1 for _, vs in M.slices) + (M.minus == BULLET) + (M.plus == BULLET)


def is_trivial_like(vs):
    """A single integral vertex: isomorphic to the trivial slice after a shift."""
    return len(vs) == 1 and vs[0].denominator == 1


def nontrivial_points(M):
    return [p for p, vs in M.slices if not is_trivial_like(vs)]


def is_toric(M):
    return len(nontrivial_points(M)) <= 2


def relations(M, gens=None):
    """Principal relations as dicts over prime divisors."""
    gens = gens or invariant_prime_divisors(M)
    rel_chi = WeilDiv()
    for p, vs in M.slices:
        for v in vs:
            c = height(v) * v
            rel_chi = rel_chi + WeilDiv({VertexDiv(p, v): int(c)})
    if M.plus == BULLET:
        rel_chi = rel_chi + prime(DPlus)
    if M.minus == BULLET:
        rel_chi = rel_chi - prime(DMinus)
    out = [rel_chi]
    for p, vs in M.slices:
        r = WeilDiv({VertexDiv(p, v): height(v) for v in vs}) - prime(GenericFiber)
        out.append(r)
    return out


# ---------------------------------------------------------------- toric conversion


@dataclass(frozen=True)
class ToricModel:
    surface: object
    labels: tuple  # PrimeDiv per ray index
    rays: tuple  # actual rays in the image lattice
    images: tuple  # (PrimeDiv, coefficient vector) pairs

    def image(self, d):
        for k, vec in self.images:
            if k == d:
                return vec
        raise KeyError(d)

    def weil_to_toric(self, D):
        n = len(self.labels)
        out = [0] * n
        for k, c in D.items():
            vec = self.image(k)
            for i in range(n):
                out[i] += c * vec[i]
        return tuple(out)


def to_fan(M):
    """Toric model of a toric multidivisor.

    The first nontrivial slice sits at height +1 and the second at height -1;
    vertex ``v`` becomes the ray ``(h*v, +-h)`` with ``h`` its height.
    Markers ``bullet`` add the horizontal rays ``(+-1, 0)``.
    """
    ess = nontrivial_points(M)
    if len(ess) > 2:
        raise NotToric("%d nontrivial slices" % len(ess))
    if not validate(M).ok or smoothness_failures(M):
        raise NotSmooth("; ".join(validate(M).failures + smoothness_failures(M)))
    shift = sum((vs[0] for p, vs in M.slices if p not in ess), Fraction(0))
    entries = []  # (ray, label, is_top)
    if ess:
        top = ess[0]
        for v in M.slice(top):
            h = height(v)
            w = v + shift
            entries.append(((int(h * w), h), VertexDiv(top, v), True))
    else:
        entries.append(((int(shift), 1), GenericFiber, True))
    if len(ess) == 2:
        bot = ess[1]
        for v in M.slice(bot):
            h = height(v)
            entries.append(((int(h * v), -h), VertexDiv(bot, v), False))
    else:
        entries.append(((0, -1), GenericFiber, False))
    if M.minus == BULLET:
        entries.append(((-1, 0), DMinus, False))
    if M.plus == BULLET:
        entries.append(((1, 0), DPlus, False))
    order = sort_ccw([e[0] for e in entries])
    lookup = {e[0]: e for e in entries}
    if len(lookup) != len(entries):
        raise NotSmooth("coincident rays")
    ordered = [lookup[r] for r in order]
    rays = tuple(e[0] for e in ordered)
    try:
        b = b_from_rays(list(rays))
        X = rays_from_b(b)
    except NotASurface as exc:
        raise NotSmooth(str(exc)) from None
    n = len(rays)
    labels = tuple(e[1] for e in ordered)
    images = {}
    fiber = [0] * n
    for i, e in enumerate(ordered):
        if e[2]:
            fiber[i] += abs(e[0][1])
    for i, lab in enumerate(labels):
        if lab.kind != "fiber":
            vec = [0] * n
            vec[i] = 1
            images[lab] = tuple(vec)
    images[GenericFiber] = tuple(fiber)
    for p, vs in M.slices:
        if p not in ess:
            images[VertexDiv(p, vs[0])] = tuple(fiber)
    return ToricModel(X, labels, rays, tuple(images.items()))


def multidivisor_from_rays(rays, R, c, top=Fraction(0), bottom=INF):
    """Downgrade a fan along the height functional ``R``.

    ``c`` is a functional completing ``R`` to a lattice basis; rays at
    positive height give the slice at ``top``, negative height the slice at
    ``bottom``, and height zero gives the markers.  Returns the multidivisor
    and the label of every ray.
    """
    if abs(c[0] * R[1] - c[1] * R[0]) != 1:
        raise PreconditionViolated("(c, R) is not a lattice basis")
    topv, botv = [], []
    labels = []
    minus = plus = CIRC
    for rho in rays:
        h = R[0] * rho[0] + R[1] * rho[1]
        a = c[0] * rho[0] + c[1] * rho[1]
        if h > 0:
            v = Fraction(a, h)
            topv.append(v)
            labels.append(VertexDiv(top, v))
        elif h < 0:
            v = Fraction(a, -h)
            botv.append(v)
            labels.append(VertexDiv(bottom, v))
        elif a > 0:
            plus = BULLET
            labels.append(DPlus)
        else:
            minus = BULLET
            labels.append(DMinus)
    slices = {}
    if topv:
        slices[top] = topv
    if botv:
        slices[bottom] = botv
    M = Multidivisor.make(slices, minus, plus)
    # trivial slices are not stored; their vertex divisor is the generic fiber
    out_labels = []
    for lab in labels:
        if lab.kind == "vertex" and M.slice(lab.point) == (Fraction(0),) and lab.point not in M.points():
            out_labels.append(GenericFiber)
        else:
            out_labels.append(lab)
    return M, tuple(out_labels)


def from_fan(X, pivot, r):
    """Multidivisor of ``X`` with one nontrivial slice at ``0``.

    Uses the height ``R`` with ``<rho_pivot, R> = -1`` and
    ``<rho_{pivot+1}, R> = r``; requires ``b_pivot < 0`` and
    ``0 <= r <= -b_pivot``.  Returns ``(M, labels)`` with labels indexed
    like ``X.b``.
    """
    b = tuple(X.b if hasattr(X, "b") else X)
    n = len(b)
    pivot %= n
    if b[pivot] >= 0:
        raise PreconditionViolated("b_pivot = %d must be negative" % b[pivot])
    if not 0 <= r <= -b[pivot]:
        raise PreconditionViolated("need 0 <= r <= %d" % (-b[pivot]))
    rot = b[pivot:] + b[:pivot]
    Y = rays_from_b(rot)
    M, labels = multidivisor_from_rays(Y.rays, (-1, r), (0, -1))
    if (M.minus == BULLET) != (r == 0) or (M.plus == BULLET) != (r == -b[pivot]):
        raise PreconditionViolated("marker rule violated for r=%d" % r)
    full = [None] * n
    for k in range(n):
        full[(pivot + k) % n] = labels[k]
    return M, tuple(full)


def describe_ray_cones(rays):
    """Determinants of consecutive cones (diagnostic)."""
    n = len(rays)
    return [det2(rays[i], rays[(i + 1) % n]) for i in range(n)]


# ---------------------------------------------------------------- blowups


def beyond(v, upward, count=3):
    """Up to ``count`` vertices w beyond ``v`` with lambda(v)lambda(w)|w - v| = 1."""
    p, q = v.numerator, v.denominator
    out = set()
    for qq in range(1, q * count + 2):
        for sgn in (1, -1):
            num = sgn + p * qq
            if num % q == 0:
                w = Fraction(num // q, qq)
                if w.denominator == qq and w != v and (w > v) == upward:
                    out.add(w)
    return sorted(out, reverse=not upward)[:count]


def mediant(a, b):
    return Fraction(a.numerator + b.numerator, a.denominator + b.denominator)


def blowups(M):
    """Invariant blowups of ``M`` as ``(M', exceptional prime divisor)`` pairs.

    Candidates are marker toggles, mediants, extreme insertions and a
    fresh point with slice ``{0, +-1}``; each must be smooth afterwards.
    """
    cands = []
    for side, d in (("minus", DMinus), ("plus", DPlus)):
        if M.marker(side) == CIRC:
            cands.append((M.with_marker(side, BULLET), d))
    for p, vs in M.slices:
        news = [mediant(a, b) for a, b in zip(vs, vs[1:])]
        news += beyond(vs[0], False) + beyond(vs[-1], True)
        for w in news:
            cands.append((M.replace_slice(p, list(vs) + [w]), VertexDiv(p, w)))
    f = M.fresh_point()
    for w in (1, -1):
        cands.append((M.replace_slice(f, [0, w]), VertexDiv(f, w)))
    seen, out = set(), []
    for N, E in cands:
        if N not in seen and is_smooth(N):
            seen.add(N)
            out.append((N, E))
    return out
