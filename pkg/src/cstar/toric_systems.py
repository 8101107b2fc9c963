"""Toric systems and exceptional sequences of line bundles.

A toric system on a surface of Picard rank ``n - 2`` is a cyclic tuple of
``n`` classes ``A_i`` with ``A_i.A_{i+1} = 1``, all other products between
distinct entries zero, and ``sum A_i = -K``.
"""

from dataclasses import dataclass, field

from .errors import (
    IllegalBlowup,
    InternalInconsistency,
    NotASurface,
    NotAToricSystem,
    NotCatalogForm,
    NotTame,
    NotToric,
    PreconditionViolated,
    RankMismatch,
)
from .multidivisor import GenericFiber, blowups, is_smooth, is_toric, to_fan
from .picard_transport import (
    blowdown_multidivisor,
    lattice,
    minus_one_curves,
    transport_matrix,
)
from .degeneration import diagram_blowdown, special_fiber
from .errors import BothEndpointsHighDegree, NotMinusOne
from .toric_core import (
    ToricSurface,
    cohomology,
    hirzebruch,
    minus_one_indices,
    rays_from_b,
    toric_blowdown,
    toric_blowup,
)

# ---------------------------------------------------------------- class arithmetic


def vadd(a, b):
    return tuple(x + y for x, y in zip(a, b))


def vsub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def vscale(c, a):
    return tuple(c * x for x in a)


def vneg(a):
    return tuple(-x for x in a)


def vsum(vs, rank):
    out = (0,) * rank
    for v in vs:
        out = vadd(out, v)
    return out


def rank_of(S):
    return lattice(S).rank


def chi(S, c):
    L = lattice(S)
    c = L.class_of(c)
    K = L.canonical
    num = L.pair(c, c) - L.pair(K, c)
    if num % 2:
        raise InternalInconsistency("D^2 - K.D is odd")
    return 1 + num // 2


def toric_vector(S, c):
    """A toric model and a torus-invariant divisor vector representing ``c``."""
    L = lattice(S)
    w = L.weil_of(L.class_of(c))
    if isinstance(S, ToricSurface):
        return S, [w.get(i, 0) for i in range(S.n_rays)]
    if not is_toric(S):
        raise NotToric("cohomology needs a toric model")
    model = to_fan(S)
    return model.surface, list(model.weil_to_toric(w))


def class_cohomology(S, c):
    X, vec = toric_vector(S, c)
    return cohomology(X, vec)


# ---------------------------------------------------------------- systems


@dataclass(frozen=True)
class ToricSystem:
    surface: object
    entries: tuple

    def __len__(self):
        return len(self.entries)

    def to_dict(self):
        return {"entries": [list(e) for e in self.entries], "basis": lattice(self.surface).basis_manifest()}


def make_system(S, entries):
    L = lattice(S)
    return ToricSystem(S, tuple(L.class_of(e) for e in entries))


def system_failures(S, A):
    L = lattice(S)
    A = [L.class_of(a) for a in A]
    n = len(A)
    out = []
    if n != L.rank + 2:
        return ["length %d, expected %d" % (n, L.rank + 2)]
    for i in range(n):
        for j in range(i + 1, n):
            adjacent = (j - i) % n in (1, n - 1)
            want = 1 if adjacent else 0
            got = L.pair(A[i], A[j])
            if got != want:
                out.append("A%d.A%d = %d, expected %d" % (i + 1, j + 1, got, want))
    if vsum(A, L.rank) != vneg(L.canonical):
        out.append("sum of entries is not -K")
    return out


def is_toric_system(S, A=None):
    if A is None:
        S, A = S.surface, S.entries
    elif isinstance(A, ToricSystem):
        S, A = A.surface, A.entries
    return not system_failures(S, A)


def _entries(S, A):
    if isinstance(A, ToricSystem):
        return A.surface, list(A.entries)
    return S, list(A)


def tv_of(S, A=None):
    """Toric surface ``b_i = 2 - chi(A_i)`` of a toric system."""
    S, A = _entries(S, A) if A is not None else (S.surface, list(S.entries))
    fails = system_failures(S, A)
    if fails:
        raise NotAToricSystem("; ".join(fails))
    b = tuple(2 - chi(S, a) for a in A)
    try:
        return rays_from_b(b)
    except NotASurface as exc:
        raise InternalInconsistency("tv %s is not a surface: %s" % (b, exc)) from None


def canonical_system(X):
    """The invariant prime divisors of a toric surface in fan order."""
    L = lattice(X)
    return ToricSystem(X, tuple(L.class_of(i) for i in range(X.n_rays)))


def sequence_from_system(S, A=None):
    S, A = _entries(S, A) if A is not None else (S.surface, list(S.entries))
    r = lattice(S).rank
    out = [(0,) * r]
    for a in A[:-1]:
        out.append(vadd(out[-1], a))
    return out


def system_from_sequence(S, E):
    L = lattice(S)
    E = [L.class_of(e) for e in E]
    A = [vsub(E[i + 1], E[i]) for i in range(len(E) - 1)]
    A.append(vsub(vsub(E[0], L.canonical), E[-1]))
    return ToricSystem(S, tuple(A))


def _interval_sums(A):
    n = len(A)
    r = len(A[0])
    for j in range(n - 1):
        acc = (0,) * r
        for k in range(j, n - 1):
            acc = vadd(acc, A[k])
            yield j, k, acc


def is_exceptional(S, A=None):
    """``H^*(-sum_{i=j}^k A_i) = 0`` for all ``1 <= j <= k < n``."""
    S, A = _entries(S, A) if A is not None else (S.surface, list(S.entries))
    for _, _, s in _interval_sums(A):
        if any(class_cohomology(S, vneg(s))):
            return False
    return True


def is_strongly_exceptional(S, A=None):
    S, A = _entries(S, A) if A is not None else (S.surface, list(S.entries))
    if not is_exceptional(S, A):
        return False
    for _, _, s in _interval_sums(A):
        h = class_cohomology(S, s)
        if h[1] or h[2]:
            return False
    return True


# ---------------------------------------------------------------- symmetry


def dihedral(seq, shift, reflect):
    seq = list(seq)
    if reflect:
        seq = seq[::-1]
    n = len(seq)
    shift %= n
    return seq[shift:] + seq[:shift]


def dihedral_moves(n):
    return [(s, f) for f in (False, True) for s in range(n)]


# ---------------------------------------------------------------- blowups


@dataclass(frozen=True)
class Blowup:
    """``big`` is the blowup of ``small``; ``exc`` names the exceptional curve on ``big``."""

    small: object
    big: object
    exc: object

    def to_dict(self):
        ex = self.exc if isinstance(self.exc, int) else self.exc.to_dict()
        return {"small": self.small.to_dict(), "big": self.big.to_dict(), "exc": ex}


def toric_blowup_at(X, j):
    n = X.n_rays
    j %= n
    return Blowup(X, toric_blowup(X, j), j + 1)


def _name_up(bl, k):
    if isinstance(bl.exc, int):
        return k if k < bl.exc else k + 1
    return k


def _name_down(bl, k):
    if isinstance(bl.exc, int):
        return k if k < bl.exc else k - 1
    if k.kind == "vertex" and k not in lattice(bl.small).generators:
        # a slice that became trivial
        return GenericFiber
    return k


def pull(bl, c):
    Ls, Lb = lattice(bl.small), lattice(bl.big)
    w = Ls.weil_of(Ls.class_of(c))
    naive = Lb.class_of({_name_up(bl, k): v for k, v in w.items()})
    e = Lb.class_of(bl.exc)
    m = Lb.pair(naive, e)
    return vadd(naive, vscale(m, e))


def push(bl, c):
    Ls, Lb = lattice(bl.small), lattice(bl.big)
    w = Lb.weil_of(Lb.class_of(c))
    out = {}
    for k, v in w.items():
        if k == bl.exc:
            continue
        kk = _name_down(bl, k)
        out[kk] = out.get(kk, 0) + v
    return Ls.class_of(out)


def exceptional_class(bl):
    return lattice(bl.big).class_of(bl.exc)


def blowups_of(S):
    if isinstance(S, ToricSurface):
        return [toric_blowup_at(S, j) for j in range(S.n_rays)]
    return [Blowup(S, N, E) for N, E in blowups(S)]


def blowdowns_of(S):
    """Equivariant blowdowns of invariant (-1)-curves, in deterministic order."""
    if isinstance(S, ToricSurface):
        return [Blowup(toric_blowdown(S, i), S, i) for i in minus_one_indices(S)]
    out = []
    if lattice(S).rank <= 2:
        return out
    for E in minus_one_curves(S):
        small = blowdown_multidivisor(S, E)
        if is_smooth(small):
            out.append(Blowup(small, S, E))
    return out


# ---------------------------------------------------------------- augmentation


def augment(A, bl, i):
    """``Aug_i``: ``(.., A_i - R, R, A_{i+1} - R, ..)`` on the blowup ``bl.big``."""
    if A.surface != bl.small:
        raise IllegalBlowup("blowup does not start at the system's surface")
    n = len(A.entries)
    if not 1 <= i <= n:
        raise PreconditionViolated("position %d outside 1..%d" % (i, n))
    R = exceptional_class(bl)
    ent = [pull(bl, a) for a in A.entries]
    k = i - 1
    ent[k] = vsub(ent[k], R)
    ent[(k + 1) % n] = vsub(ent[(k + 1) % n], R)
    ent.insert(k + 1, R)
    return ToricSystem(bl.big, tuple(ent))


def deaugment(A, bl, k):
    """Inverse of augmentation at the entry ``A[k]`` equal to the exceptional class.

    Returns ``(system on bl.small, i, shift)`` such that rotating
    ``augment(result, bl, i)`` by ``shift`` gives ``A`` back.
    """
    ent = list(A.entries)
    n = len(ent)
    R = exceptional_class(bl)
    if ent[k] != R:
        raise PreconditionViolated("entry %d is not the exceptional class" % k)
    shift = 0
    if k == 0:
        ent = ent[1:] + ent[:1]
        k = n - 1
        shift = -1
    prev, nxt = k - 1, (k + 1) % n
    ent[prev] = vadd(ent[prev], R)
    ent[nxt] = vadd(ent[nxt], R)
    del ent[k]
    small = tuple(push(bl, e) for e in ent)
    return ToricSystem(bl.small, small), k, shift


# ---------------------------------------------------------------- Hirzebruch catalog


def hirzebruch_data(S):
    """``(r, options)`` for a rank-two surface; options are ``(P, Q)`` pairs.

    P is a fiber of a ruling, Q = N + rP with N the negative section.
    For r = 0 both rulings are offered.
    """
    L = lattice(S)
    if L.rank != 2:
        raise PreconditionViolated("not a rank-two surface")
    K = L.canonical
    squares = []
    for g in L.generators:
        c = L.class_of(g)
        squares.append((g, c, L.pair(c, c)))
    r = max(0, -min(s for _, _, s in squares))
    fibers = []
    for _, c, s in squares:
        if s == 0 and L.pair(K, c) == -2 and c not in fibers:
            fibers.append(c)
    if r == 0:
        if len(fibers) != 2:
            raise InternalInconsistency("F_0 without two rulings")
        return 0, [(fibers[0], fibers[1]), (fibers[1], fibers[0])]
    P = fibers[0]
    N = next(c for _, c, s in squares if s == -r)
    return r, [(P, vadd(N, vscale(r, P)))]


def catalog_A(S, i, PQ=None):
    r, opts = hirzebruch_data(S)
    P, Q = PQ or opts[0]
    ent = (P, vadd(vscale(i, P), Q), P, vadd(vscale(-(r + i), P), Q))
    return ToricSystem(S, ent)


def catalog_At(S, i, PQ=None):
    r, opts = hirzebruch_data(S)
    if r % 2:
        raise PreconditionViolated("the second family needs r even")
    P, Q = PQ or opts[0]
    Sx = vsub(Q, vscale(r // 2, P))
    ent = (Sx, vadd(P, vscale(i, Sx)), Sx, vsub(P, vscale(i, Sx)))
    return ToricSystem(S, ent)


def catalog_Fr(r, i):
    X = hirzebruch(r)
    A = catalog_A(X, i)
    At = catalog_At(X, i) if r % 2 == 0 else None
    return A, At


def identify_catalog(A):
    """``(family, i, PQ, shift, reflect)`` with ``A`` the dihedral image of a catalog system."""
    S = A.surface
    r, opts = hirzebruch_data(S)
    n = len(A.entries)
    target = list(A.entries)
    for PQ in opts:
        P, Q = PQ
        for shift, refl in dihedral_moves(n):
            # undo the symmetry on the entries and read off i
            base = _undo(target, shift, refl)
            if base[0] == P and base[2] == P:
                i = _coef(vsub(base[1], Q), P)
                if i is not None and catalog_A(S, i, PQ).entries == tuple(base):
                    return "A", i, PQ, shift, refl
            if r % 2 == 0:
                Sx = vsub(Q, vscale(r // 2, P))
                if base[0] == Sx and base[2] == Sx:
                    i = _coef(vsub(base[1], P), Sx)
                    if i is not None and catalog_At(S, i, PQ).entries == tuple(base):
                        return "At", i, PQ, shift, refl
    return None


def _undo(seq, shift, reflect):
    """Inverse of ``dihedral(., shift, reflect)``."""
    n = len(seq)
    seq = list(seq)
    seq = seq[-shift % n :] + seq[: -shift % n] if shift % n else seq
    if reflect:
        seq = seq[::-1]
    return seq


def _coef(v, P):
    """``i`` with ``v = i P``, or None."""
    i = None
    for x, p in zip(v, P):
        if p == 0:
            if x != 0:
                return None
            continue
        if x % p:
            return None
        if i is None:
            i = x // p
        elif i != x // p:
            return None
    return 0 if i is None else i


def mutate_L1(A, power=1):
    """Left mutation ``L_1^power`` on a catalog system: ``A_{r,i} -> A_{r,i+power}``."""
    hit = identify_catalog(A) if lattice(A.surface).rank == 2 else None
    if hit is None or hit[0] != "A":
        raise NotCatalogForm("system is not a symmetry image of the first catalog family")
    _, i, PQ, shift, refl = hit
    new = catalog_A(A.surface, i + power, PQ)
    return ToricSystem(A.surface, tuple(dihedral(new.entries, shift, refl)))


def enumerate_systems_F(r, bound=6):
    """All toric systems on F_r with coefficients in ``[-bound, bound]`` (basis P, Q)."""

    def dot(a, b):
        return a[0] * b[1] + a[1] * b[0] + r * a[1] * b[1]

    box = [(a, b) for a in range(-bound, bound + 1) for b in range(-bound, bound + 1)]
    mK = (2 - r, 2)
    found = []
    for A1 in box:
        for A2 in box:
            if dot(A1, A2) != 1:
                continue
            # A3 . A1 = 0, A3 . A2 = 1
            m = [[A1[1], A1[0] + r * A1[1]], [A2[1], A2[0] + r * A2[1]]]
            det = m[0][0] * m[1][1] - m[0][1] * m[1][0]
            if det == 0:
                continue
            x_num, y_num = -m[0][1], m[0][0]
            if x_num % det or y_num % det:
                continue
            A3 = (x_num // det, y_num // det)
            A4 = (mK[0] - A1[0] - A2[0] - A3[0], mK[1] - A1[1] - A2[1] - A3[1])
            if max(abs(x) for x in A3 + A4) > bound:
                continue
            if dot(A3, A4) == 1 and dot(A4, A1) == 1 and dot(A4, A2) == 0:
                found.append((A1, A2, A3, A4))
    return found


def catalog_mismatches(r, bound=6):
    """Systems found by brute force that are not catalog systems up to symmetry."""
    X = hirzebruch(r)
    out = []
    for ent in enumerate_systems_F(r, bound):
        if identify_catalog(ToricSystem(X, ent)) is None:
            out.append(ent)
    return out


def strong_threshold(r, lo=-5, hi=5):
    """Smallest ``i0`` such that ``A_{r,i}`` is strongly exceptional for all ``i0 <= i <= hi``."""
    X = hirzebruch(r)
    i0 = None
    for i in range(hi, lo - 1, -1):
        if is_strongly_exceptional(catalog_A(X, i)):
            i0 = i
        else:
            break
    return i0


# ---------------------------------------------------------------- transport


def transport_system(d, A):
    tm = transport_matrix(d)
    ent = tuple(tm.apply(a) for a in A.entries)
    S = tm.target.surface
    out = ToricSystem(S, ent)
    fails = system_failures(S, ent)
    if fails:
        raise InternalInconsistency("transported system fails axioms: %s" % "; ".join(fails))
    if tv_of(out) != tv_of(A):
        raise InternalInconsistency("tv changed under transport")
    return out


def transport_system_inverse(d, A):
    tm = transport_matrix(d)
    ent = tuple(tm.inverse(a) for a in A.entries)
    out = ToricSystem(d.M, ent)
    fails = system_failures(d.M, ent)
    if fails:
        raise InternalInconsistency("inverse transport fails axioms: %s" % "; ".join(fails))
    if tv_of(out) != tv_of(A):
        raise InternalInconsistency("tv changed under inverse transport")
    return out


# ---------------------------------------------------------------- tameness


@dataclass(frozen=True)
class TameCertificate:
    base: ToricSystem
    steps: tuple = field(default=())  # (Blowup, i, shift), applied in order

    def replay(self):
        A = self.base
        for bl, i, shift in self.steps:
            A = augment(A, bl, i)
            A = ToricSystem(A.surface, tuple(dihedral(A.entries, shift, False)))
        return A

    def to_dict(self):
        return {
            "base_surface": self.base.surface.to_dict(),
            "base": [list(e) for e in self.base.entries],
            "steps": [{"blowup": bl.to_dict(), "i": i, "shift": s} for bl, i, s in self.steps],
        }


def _rank2_exceptional(A):
    return is_exceptional(A)


def tame_certificate(S, A=None):
    """Search for an augmentation chain from an exceptional Hirzebruch system."""
    A = A if isinstance(A, ToricSystem) else (make_system(S, A) if A is not None else S)
    if system_failures(A.surface, A.entries):
        raise NotAToricSystem("; ".join(system_failures(A.surface, A.entries)))
    return _tame(A, {})


def _tame(A, memo):
    key = (A.surface, A.entries)
    if key in memo:
        return memo[key]
    S = A.surface
    res = None
    if lattice(S).rank == 2:
        if _rank2_exceptional(A):
            res = TameCertificate(A, ())
    else:
        for bl in blowdowns_of(S):
            R = exceptional_class(bl)
            for k, a in enumerate(A.entries):
                if a != R:
                    continue
                small, i, shift = deaugment(A, bl, k)
                sub = _tame(small, memo)
                if sub is not None:
                    res = TameCertificate(sub.base, sub.steps + ((bl, i, shift),))
                    break
            if res is not None:
                break
    memo[key] = res
    return res


def is_tame(A):
    return tame_certificate(A) is not None


# ---------------------------------------------------------------- compatibility


def is_compatible(d, A, check_tame=True):
    """Recursive compatibility of a tame system on the general fiber with ``d``."""
    if check_tame and tame_certificate(A) is None:
        raise NotTame("system is not tame on the general fiber")
    return _compatible(d, A)


def _compatible(d, A):
    if lattice(d.M).rank == 2:
        return is_exceptional(transport_system(d, A))
    S = special_fiber(d)
    for E0 in minus_one_curves(S):
        try:
            d2, Es = diagram_blowdown(d, E0, return_exceptional=True)
        except (BothEndpointsHighDegree, NotMinusOne, PreconditionViolated):
            continue
        bl = Blowup(d2.M, d.M, Es)
        R = exceptional_class(bl)
        for k, a in enumerate(A.entries):
            if a == R:
                small, _, _ = deaugment(A, bl, k)
                if _compatible(d2, small):
                    return True
    return False


# ---------------------------------------------------------------- construction


def _reduce_chain(S):
    """Blowups ``[bl_1, ..., bl_m]`` with ``bl_1.small`` of rank two and ``bl_m.big == S``."""
    chain = []
    while lattice(S).rank > 2:
        bls = blowdowns_of(S)
        if not bls:
            raise InternalInconsistency("no invariant (-1)-curve on %r" % (S,))
        chain.append(bls[0])
        S = bls[0].small
    chain.reverse()
    return chain


def _toric_chains(Y):
    """All sequences of toric blowdown indices from ``Y`` to rank two (lazy DFS)."""
    if Y.n_rays == 4:
        yield [], Y
        return
    for i in minus_one_indices(Y):
        for rest, base in _toric_chains(toric_blowdown(Y, i)):
            yield [i] + rest, base


def toricsys_for_target(X, Y):
    """A tame exceptional toric system on ``X`` with ``tv = Y``."""
    if not isinstance(Y, ToricSurface):
        Y = rays_from_b(Y)
    rx, ry = lattice(X).rank, Y.n_rays - 2
    if rx != ry:
        raise RankMismatch("ranks %d and %d differ" % (rx, ry))
    if rx <= 2:
        raise PreconditionViolated("need rank > 2")
    chain = _reduce_chain(X)
    base = chain[0].small if chain else X
    r, opts = hirzebruch_data(base)
    for downs, Fs in _toric_chains(Y):
        s = max(abs(x) for x in Fs.b)
        if (s - r) % 2:
            continue
        A = catalog_A(base, (s - r) // 2, opts[0])
        tvb = tv_of(A).b
        g = next((m for m in dihedral_moves(4) if tuple(dihedral(tvb, *m)) == Fs.b), None)
        if g is None:
            continue
        A = ToricSystem(base, tuple(dihedral(A.entries, *g)))
        # Y_k along the chain, from F_s up to Y
        ys = [Y]
        for i in downs:
            ys.append(toric_blowdown(ys[-1], i))
        ys.reverse()
        off = 0  # tv(A).b[(q + off) % n] == ys[k].b[q]
        for k, (bl, i) in enumerate(zip(chain, reversed(downs))):
            n = ys[k].n_rays
            j = ((i - 1) % n + off) % n
            A = augment(A, bl, j + 1)
            cur, nxt = tv_of(A).b, ys[k + 1].b
            m = len(cur)
            off = next(t for t in range(m) if all(cur[(q + t) % m] == nxt[q] for q in range(m)))
        A = ToricSystem(A.surface, tuple(dihedral(A.entries, off, False)))
        if tv_of(A).b != Y.b:
            raise InternalInconsistency("replayed system has tv %s, wanted %s" % (tv_of(A).b, Y.b))
        return A
    raise InternalInconsistency("no blowdown chain of matching parity")
