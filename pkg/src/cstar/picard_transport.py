"""Picard lattices of C*-surfaces and transport along degenerations.

Classes are integer row vectors in a basis of the free quotient of the
invariant Weil divisors modulo principal relations.  On a non-toric surface
the pairing is obtained by transporting to a toric special fiber.
"""

from dataclasses import dataclass
from functools import lru_cache

from . import intlinalg as la
from .degeneration import (
    DegenerationDiagram,
    diagram_blowdown,
    merge_slices_degeneration,
    mergeable_pairs,
    special_fiber,
    validate_diagram,
)
from .errors import InternalInconsistency, NotSmooth, PreconditionViolated, UnknownDivisor
from .multidivisor import (
    BULLET,
    CIRC,
    DMinus,
    DPlus,
    GenericFiber,
    Multidivisor,
    PrimeDiv,
    VertexDiv,
    WeilDiv,
    height,
    invariant_prime_divisors,
    is_smooth,
    is_toric,
    nontrivial_points,
    picard_rank,
    prime,
    relations,
    smoothness_failures,
    to_fan,
    validate,
)
from .toric_core import ToricSurface, intersection_matrix, rays_from_b

# ---------------------------------------------------------------- Weil level


def canonical_divisor(M):
    """Invariant canonical divisor ``-2F + sum (lambda(v)-1) D_v - D_+ - D_-``."""
    _require_smooth(M)
    K = WeilDiv({GenericFiber: -2})
    for p, vs in M.slices:
        for v in vs:
            K = K + WeilDiv({VertexDiv(p, v): height(v) - 1})
    if M.plus == BULLET:
        K = K - prime(DPlus)
    if M.minus == BULLET:
        K = K - prime(DMinus)
    return K


def transport_weil(d, D):
    """Image of a Weil divisor of the general fiber on the special fiber."""
    gens = set(invariant_prime_divisors(d.M))
    out = WeilDiv()
    for k, c in D.items():
        if k not in gens:
            raise UnknownDivisor("%r is not a prime divisor of the general fiber" % (k,))
        if k.kind == "vertex" and k.point == d.p0:
            img = WeilDiv({VertexDiv(d.p0, k.v + w): height(w) for a, w in d.edges if a == k.v})
        elif k.kind == "vertex" and k.point == d.ps:
            img = WeilDiv({VertexDiv(d.p0, a + k.v): height(a) for a, w in d.edges if w == k.v})
        else:
            img = prime(k)
        out = out + c * img
    return out


# ---------------------------------------------------------------- lattices


def _require_smooth(M):
    rep = validate(M)
    fails = rep.failures + (smoothness_failures(M) if rep.ok else [])
    if fails:
        raise NotSmooth("; ".join(fails))


@dataclass(frozen=True, eq=False)
class PicLattice:
    surface: Multidivisor
    generators: tuple
    relations: tuple
    proj: tuple
    lift: tuple
    gram: tuple
    kdiv: WeilDiv = None

    @property
    def rank(self):
        return len(self.lift)

    def index(self, d):
        try:
            return self.generators.index(d)
        except ValueError:
            raise UnknownDivisor("%r is not an invariant prime divisor" % (d,)) from None

    def class_of(self, D):
        """Class of a Weil divisor (dict) or pass through an existing class."""
        if isinstance(D, (PrimeDiv, int)):
            D = WeilDiv({D: 1})
        if not isinstance(D, dict):
            D = tuple(D)
            if len(D) != self.rank:
                raise PreconditionViolated("class has length %d, expected %d" % (len(D), self.rank))
            return D
        vec = [0] * len(self.generators)
        for k, c in D.items():
            vec[self.index(k)] += c
        return tuple(la.vecmat(vec, self.proj))

    def weil_of(self, c):
        vec = la.vecmat(list(c), self.lift)
        return WeilDiv({g: x for g, x in zip(self.generators, vec)})

    def pair(self, a, b):
        a, b = self.class_of(a), self.class_of(b)
        return sum(a[i] * self.gram[i][j] * b[j] for i in range(self.rank) for j in range(self.rank))

    @property
    def canonical(self):
        return self.class_of(self.kdiv)

    def basis_manifest(self):
        out = []
        for i in range(self.rank):
            w = self.weil_of([int(i == j) for j in range(self.rank)])
            if all(isinstance(k, int) for k in w):
                out.append(" + ".join("%d*D%d" % (w[k], k) for k in sorted(w)))
            else:
                out.append(repr(w))
        return out


def _presentation(M):
    gens = tuple(invariant_prime_divisors(M))
    rels = []
    for r in relations(M, gens):
        rels.append(tuple(r.get(g, 0) for g in gens))
    proj, lift = la.cokernel(rels, len(gens))
    return gens, tuple(rels), proj, lift


def _toric_gram(M, gens, lift):
    model = to_fan(M)
    T = intersection_matrix(model.surface)
    vecs = []
    for row in lift:
        D = WeilDiv({g: x for g, x in zip(gens, row)})
        vecs.append(model.weil_to_toric(D))
    n = len(T)
    return [[sum(u[i] * T[i][j] * w[j] for i in range(n) for j in range(n)) for w in vecs] for u in vecs]


def _class_transport(d, Lg, Ls):
    rows = []
    for row in Lg.lift:
        D = WeilDiv({g: x for g, x in zip(Lg.generators, row)})
        rows.append(list(Ls.class_of(transport_weil(d, D))))
    return rows


@lru_cache(maxsize=4096)
def toric_lattice(X):
    """Picard lattice of a toric surface with basis ``D_2, ..., D_{n-1}``.

    Generators are the ray indices.
    """
    rays = rays_from_b(X.b).rays
    n = len(rays)
    k = n - 2
    rels = (tuple(r[0] for r in rays), tuple(r[1] for r in rays))
    proj = [[0] * k for i in range(n)]
    for i in range(2, n):
        proj[i][i - 2] = 1
        proj[0][i - 2] = -rays[i][0]
        proj[1][i - 2] = -rays[i][1]
    lift = [[int(j == i + 2) for j in range(n)] for i in range(k)]
    T = intersection_matrix(X)
    gram = [[T[i + 2][j + 2] for j in range(k)] for i in range(k)]
    K = WeilDiv({i: -1 for i in range(n)})
    return PicLattice(X, tuple(range(n)), rels, tuple(map(tuple, proj)), tuple(map(tuple, lift)), tuple(map(tuple, gram)), K)


@lru_cache(maxsize=4096)
def picard_lattice(M):
    _require_smooth(M)
    gens, rels, proj, lift = _presentation(M)
    if len(lift) != picard_rank(M):
        raise InternalInconsistency("quotient rank %d differs from picard_rank %d" % (len(lift), picard_rank(M)))
    if is_toric(M):
        gram = _toric_gram(M, gens, lift)
    else:
        chain, _ = degenerate_to_toric(M)
        gram = _gram_via(M, chain[0], gens, rels, proj, lift)
    L = PicLattice(
        M, gens, rels, tuple(map(tuple, proj)), tuple(map(tuple, lift)), tuple(map(tuple, gram)), canonical_divisor(M)
    )
    K = L.canonical
    if L.pair(K, K) + L.rank != 10:
        raise InternalInconsistency("K^2 + rank != 10 on %r" % (M,))
    return L


def _gram_via(M, d, gens, rels, proj, lift):
    Ls = picard_lattice(special_fiber(d))
    tmp = PicLattice(M, gens, rels, tuple(map(tuple, proj)), tuple(map(tuple, lift)), ())
    T = _class_transport(d, tmp, Ls)
    return la.matmul(la.matmul(T, [list(r) for r in Ls.gram]), la.transpose(T))


def gram_via_diagram(d):
    """Pairing on the general fiber of ``d`` obtained through its special fiber."""
    gens, rels, proj, lift = _presentation(d.M)
    return _gram_via(d.M, d, gens, rels, proj, lift)


def lattice(S):
    """Picard lattice of a toric surface or a multidivisor."""
    if isinstance(S, ToricSurface):
        return toric_lattice(S)
    return picard_lattice(S)


def prime_class(M, d):
    return lattice(M).class_of(d)


def intersect(M, D, E):
    return lattice(M).pair(D, E)


def euler_char_class(M, D):
    L = lattice(M)
    c = L.class_of(D)
    K = L.canonical
    num = L.pair(c, c) - L.pair(K, c)
    if num % 2:
        raise InternalInconsistency("D^2 - K.D is odd")
    return 1 + num // 2


def minus_one_curves(M):
    L = picard_lattice(M)
    out = []
    for g in L.generators:
        if g == GenericFiber:
            continue
        c = L.class_of(prime(g))
        if L.pair(c, c) == -1:
            out.append(g)
    return out


# ---------------------------------------------------------------- transport maps


@dataclass(frozen=True)
class TransportMap:
    diagram: DegenerationDiagram
    matrix: tuple
    source: PicLattice
    target: PicLattice

    def apply(self, c):
        return tuple(la.vecmat(list(self.source.class_of(c)), [list(r) for r in self.matrix]))

    def inverse(self, c):
        x = la.solve_unimodular([list(r) for r in self.matrix], list(self.target.class_of(c)))
        if x is None or any(v.denominator != 1 for v in x):
            raise InternalInconsistency("transport is not invertible over the integers")
        return tuple(int(v) for v in x)


def transport_matrix(d):
    rep = validate_diagram(d)
    if not rep.ok:
        from .errors import InvalidDiagram

        raise InvalidDiagram("; ".join(rep.failures))
    S = special_fiber(d)
    Lg, Ls = picard_lattice(d.M), picard_lattice(S)
    if Lg.rank != Ls.rank:
        raise InternalInconsistency("fibers have different Picard rank")
    T = _class_transport(d, Lg, Ls)
    if abs(la.det(T)) != 1:
        raise InternalInconsistency("transport matrix is not unimodular")
    G = la.matmul(la.matmul(T, [list(r) for r in Ls.gram]), la.transpose(T))
    if G != [list(r) for r in Lg.gram]:
        raise InternalInconsistency("transport does not preserve the pairing")
    Kt = Ls.class_of(transport_weil(d, canonical_divisor(d.M)))
    if Kt != Ls.canonical:
        raise InternalInconsistency("transport does not preserve the canonical class")
    return TransportMap(d, tuple(map(tuple, T)), Lg, Ls)


# ---------------------------------------------------------------- degenerating


def degenerate_to_toric(M, choose=None):
    """Merge slices until the surface is toric.

    ``choose`` picks a pair from the list of mergeable pairs (default: first).
    Returns ``(chain, toric_surface)``.
    """
    _require_smooth(M)
    chain = []
    while len(nontrivial_points(M)) > 2:
        pairs = mergeable_pairs(M)
        if not pairs:
            raise InternalInconsistency("no mergeable pair on smooth %r" % (M,))
        P, Q = (choose or (lambda ps: ps[0]))(pairs)
        d = merge_slices_degeneration(M, P, Q)
        chain.append(d)
        M = special_fiber(d)
        if not is_smooth(M):
            raise InternalInconsistency("special fiber of a merge is singular: %r" % (M,))
    return chain, to_fan(M).surface


def blowdown_multidivisor(M, E):
    """Contract an invariant (-1)-curve of ``M`` that is a vertex or D+-."""
    if E not in invariant_prime_divisors(M) or E == GenericFiber or intersect(M, E, E) != -1:
        from .errors import NotMinusOne

        raise NotMinusOne("%r is not an invariant (-1)-curve" % (E,))
    if E == DPlus:
        return M.with_marker("plus", CIRC)
    if E == DMinus:
        return M.with_marker("minus", CIRC)
    return M.replace_slice(E.point, [v for v in M.slice(E.point) if v != E.v])


def lift_blowdown(chain, E):
    """Blow down every diagram of a degeneration chain, starting from the toric end.

    ``E`` is a (-1)-curve of the last special fiber.  Returns the blown-down
    chain (same order) and the exceptional divisor on the first general fiber.
    """
    out = []
    for d in reversed(chain):
        d2, E = diagram_blowdown(d, E, return_exceptional=True)
        out.append(d2)
    out.reverse()
    return out, E


def reduce_to_hirzebruch(M):
    """Blow ``M`` down to rank two.

    Returns a list of steps ``(chain, E, M_before, M_after)`` where ``chain``
    degenerates ``M_before`` to a toric surface and ``E`` is the contracted
    invariant curve of ``M_before``.
    """
    _require_smooth(M)
    steps = []
    while picard_rank(M) > 2:
        chain, _ = degenerate_to_toric(M)
        end = special_fiber(chain[-1]) if chain else M
        curves = minus_one_curves(end)
        if not curves:
            raise InternalInconsistency("toric surface of rank > 2 without invariant (-1)-curve")
        E0 = curves[0]
        if chain:
            new_chain, E = lift_blowdown(chain, E0)
            M2 = new_chain[0].M
        else:
            E = E0
            M2 = blowdown_multidivisor(M, E)
        if not is_smooth(M2):
            raise InternalInconsistency("blowdown produced a singular surface")
        steps.append((tuple(chain), E, M, M2))
        M = M2
    return steps


# ---------------------------------------------------------------- blowup maps


def pullback(small, big, E, c):
    """Pull a class on ``small`` back to its blowup ``big`` with exceptional ``E``."""
    Ls, Lb = picard_lattice(small), picard_lattice(big)
    D = Ls.weil_of(Ls.class_of(c))
    naive = Lb.class_of(D)
    e = Lb.class_of(prime(E))
    m = Lb.pair(naive, e)
    return tuple(x + m * y for x, y in zip(naive, e))


def pushforward(big, small, E, c):
    Lb, Ls = picard_lattice(big), picard_lattice(small)
    D = Lb.weil_of(Lb.class_of(c))
    D = WeilDiv({k: v for k, v in D.items() if k != E})
    return Ls.class_of(D)
