from fractions import Fraction as F
from itertools import product

import pytest

from cstar.degeneration import (
    DegenerationDiagram,
    hirzebruch_diagram,
    special_fiber,
    toric_deformation_diagram,
)
from cstar.errors import NotSmooth, UnknownDivisor
from cstar.multidivisor import (
    BULLET,
    INF,
    DMinus,
    DPlus,
    GenericFiber,
    Multidivisor,
    VertexDiv,
    WeilDiv,
    invariant_prime_divisors,
    is_toric,
    nontrivial_points,
    picard_rank,
    prime,
    to_fan,
)
from cstar.picard_transport import (
    canonical_divisor,
    degenerate_to_toric,
    euler_char_class,
    intersect,
    minus_one_curves,
    picard_lattice,
    reduce_to_hirzebruch,
    transport_matrix,
    transport_weil,
)
from cstar.toric_core import rays_from_b

h = F(-1, 2)
BUNDLE = Multidivisor.make({}, BULLET, BULLET)


def ruling(L):
    """Brute-force fiber class P and section class Q with Q^2 = r."""
    K = L.canonical
    vecs = [v for v in product(range(-6, 7), repeat=2) if v != (0, 0)]
    fibers = [v for v in vecs if L.pair(v, v) == 0 and L.pair(K, v) == -2]
    return fibers, vecs


def pq(L, r):
    fibers, vecs = ruling(L)
    P = fibers[0]
    # solutions of P.v = 1 form a coset of the span of P, and v^2 moves by 2 along it
    Q0 = next(v for v in vecs if L.pair(P, v) == 1)
    t, odd = divmod(r - L.pair(Q0, Q0), 2)
    assert not odd
    return P, tuple(q + t * p for q, p in zip(Q0, P))


def test_transport_weil_examples():
    d = hirzebruch_diagram(1, 1)
    assert transport_weil(d, prime(VertexDiv(INF, 1))) == WeilDiv({VertexDiv(0, 1): 1})
    assert transport_weil(d, prime(VertexDiv(INF, 0))) == WeilDiv({VertexDiv(0, 0): 1, VertexDiv(0, h): 2})
    assert transport_weil(d, prime(GenericFiber)) == prime(GenericFiber)
    with pytest.raises(UnknownDivisor):
        transport_weil(d, prime(VertexDiv(F(3), 1)))


def test_transport_weil_other_points_fixed():
    M = Multidivisor.make({0: [h, 0], INF: [0, 1], 1: [0, 1]}, "circ", "bullet")
    d = DegenerationDiagram.make(M, F(0), INF, [(h, 0), (0, 0), (0, 1)])
    D = prime(VertexDiv(F(1), 1)) + prime(DPlus)
    assert transport_weil(d, D) == D


@pytest.mark.parametrize("r", range(5))
def test_hirzebruch_lattice(r):
    L = picard_lattice(hirzebruch_diagram(r, 1).M)
    assert L.rank == 2
    P, Q = pq(L, r)
    assert (L.pair(P, P), L.pair(P, Q), L.pair(Q, Q)) == (0, 1, r)


def test_bundle_and_special_fiber_lattices():
    L = picard_lattice(BUNDLE)
    assert L.rank == 2 and len(ruling(L)[0]) == 2
    L = picard_lattice(special_fiber(hirzebruch_diagram(1, 1)))
    assert L.rank == 2
    assert sorted(L.pair(g, g) for g in L.generators) == [-3, 0, 0, 3]


def test_lattice_requires_smooth():
    with pytest.raises(NotSmooth):
        picard_lattice(Multidivisor.make({0: [0, "1/2"], INF: [0, 1]}))


@pytest.mark.parametrize("r", range(1, 7))
@pytest.mark.parametrize("a", range(1, 5))
def test_hirzebruch_transport(r, a):
    T = transport_matrix(hirzebruch_diagram(r, a))
    P, Q = pq(T.source, r)
    P0, Q0 = pq(T.target, r + 2 * a)
    assert T.apply(P) == P0
    assert T.apply(Q) == tuple(q - a * p for q, p in zip(Q0, P0))


def test_alternate_graph_swaps_ruling():
    T = transport_matrix(hirzebruch_diagram(0, 1, alternate=True))
    Ls, L0 = T.source, T.target
    fibers, _ = ruling(Ls)
    P0, Q0 = pq(L0, 2)
    # one of the two rulings of F0 plays P
    images = {T.apply(P) for P in fibers}
    assert tuple(q - p for q, p in zip(Q0, P0)) in images and P0 in images


def test_trivial_diagram_is_identity():
    d = toric_deformation_diagram(rays_from_b((-1, 0, 1, 0)), 0)
    T = transport_matrix(d)
    assert [list(r) for r in T.matrix] == [[1, 0], [0, 1]]


def test_canonical_class_examples():
    d = hirzebruch_diagram(1, 1)
    T = transport_matrix(d)
    K = T.source.canonical
    assert T.apply(K) == T.target.canonical
    assert intersect(d.M, K, K) == 8


def test_euler_characteristic_examples():
    d = hirzebruch_diagram(1, 1)
    T = transport_matrix(d)
    P, Q = pq(T.source, 1)
    assert euler_char_class(d.M, (0, 0)) == 1
    assert euler_char_class(d.M, tuple(-k for k in T.source.canonical)) == 9
    assert euler_char_class(d.M, Q) == 3
    assert euler_char_class(special_fiber(d), T.apply(Q)) == 3


def test_adjunction_and_noether(md_corpus):
    for M in md_corpus:
        L = picard_lattice(M)
        K = L.canonical
        assert L.pair(K, K) + L.rank == 10
        for g in invariant_prime_divisors(M):
            if g != GenericFiber:
                c = L.class_of(g)
                assert L.pair(c, c) + L.pair(K, c) == -2


def test_minus_one_curves():
    for r in (0, 2, 3):
        assert minus_one_curves(hirzebruch_diagram(r, 1).M) == []
    assert len(minus_one_curves(hirzebruch_diagram(1, 1).M)) == 1
    assert minus_one_curves(special_fiber(hirzebruch_diagram(1, 1))) == []
    M = Multidivisor.make({0: [h, 0], INF: [0, 1]}, "circ", "bullet")
    assert DPlus in minus_one_curves(M)


def test_degenerate_to_toric_examples(md_corpus):
    assert degenerate_to_toric(hirzebruch_diagram(1, 1).M)[0] == []
    M = Multidivisor.make({0: [h, 0], 1: [0, 1], INF: [0, 1]}, "circ", "bullet")
    chain, X = degenerate_to_toric(M)
    assert len(chain) == 1 and len(X.b) == picard_rank(M) + 2
    four = [M for M in md_corpus if len(nontrivial_points(M)) == 4]
    assert four
    for M in four:
        chain, X = degenerate_to_toric(M)
        assert len(chain) == 2 and len(X.b) == picard_rank(M) + 2


def test_path_independence_of_pairing(md_corpus):
    from cstar.picard_transport import _presentation, _gram_via

    seen = 0
    for M in md_corpus:
        if is_toric(M):
            continue
        gens, rels, proj, lift = _presentation(M)
        grams = set()
        for pick in (lambda ps: ps[0], lambda ps: ps[-1]):
            chain, _ = degenerate_to_toric(M, pick)
            grams.add(tuple(map(tuple, _gram_via(M, chain[0], gens, rels, proj, lift))))
        assert len(grams) == 1
        seen += 1
    assert seen > 20


def test_reduce_to_hirzebruch(md_corpus):
    assert reduce_to_hirzebruch(hirzebruch_diagram(2, 1).M) == []
    X3 = to_fan(Multidivisor.make({0: [h, 0], INF: [0, 1]}, "circ", "bullet"))
    assert len(X3.surface.b) == 5
    M = Multidivisor.make({0: [h, 0], INF: [0, 1]}, "circ", "bullet")
    assert len(reduce_to_hirzebruch(M)) == 1
    for M in md_corpus[:80]:
        steps = reduce_to_hirzebruch(M)
        assert len(steps) == picard_rank(M) - 2
        if steps:
            assert picard_rank(steps[-1][3]) == 2


def test_canonical_divisor_coefficients():
    K = canonical_divisor(hirzebruch_diagram(1, 1).M)
    assert K[GenericFiber] == -2 and K[VertexDiv(0, h)] == 1
    K = canonical_divisor(BUNDLE)
    assert K[DPlus] == -1 and K[DMinus] == -1
