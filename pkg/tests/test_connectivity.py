import itertools

import pytest

from cstar.connectivity import (
    DEFORM,
    DEGENERATE,
    DeformationPath,
    DeformationStep,
    bridge_legs,
    check_path,
    connect,
    connect_toric,
    path_from_dict,
    same_surface,
    shorten,
    transport_along_path,
)
from cstar.degeneration import hirzebruch_diagram, special_fiber, validate_diagram
from cstar.errors import InternalInconsistency, RankMismatch, RankTooSmall
from cstar.multidivisor import Multidivisor, is_toric, picard_rank, to_fan
from cstar.picard_transport import degenerate_to_toric
from cstar.toric_core import (
    canonical_form,
    enumerate_surfaces,
    rays_from_b,
    toric_blowup,
)
from cstar.toric_systems import canonical_system, catalog_A, toricsys_for_target, tv_of


def ranks(path):
    return {S.picard_number if hasattr(S, "picard_number") else picard_rank(S) for S in path.surfaces()}


def test_identical_surfaces_give_empty_path():
    X = rays_from_b((1, 1, 1, 0, 0))
    assert len(connect_toric(X, X)) == 0
    assert len(connect_toric(X, (0, 0, 1, 1, 1))) == 0


def test_rank3_example():
    path = connect_toric((1, 1, 1, 0, 0), (-1, 0, 2, 1, 1))
    assert len(path) > 0 and check_path(path)
    assert ranks(path) == {3}
    for s in path.steps:
        assert validate_diagram(s.diagram).ok


def test_rank2():
    with pytest.raises(RankTooSmall):
        connect_toric((0, 0, 0, 0), (0, 1, 0, -1))
    path = connect_toric((0, 0, 0, 0), (0, 2, 0, -2))
    assert len(path) >= 1 and check_path(path)


def test_rank_mismatch():
    with pytest.raises(RankMismatch):
        connect_toric((0, 0, 0, 0), (1, 1, 1, 0, 0))


def test_rank3_all_pairs_small():
    surfaces = enumerate_surfaces(5, -3, 3)
    for a, b in itertools.combinations(surfaces, 2):
        path = connect_toric(a, b)
        assert ranks(path) == {3}


def test_bridge_legs_are_the_two_blowups():
    def cf(S):
        return canonical_form(to_fan(S).surface.b)

    legs = 0
    for b in enumerate_surfaces(5, -2, 2) + enumerate_surfaces(4, -2, 2):
        S = rays_from_b(b)
        for j in range(len(b)):
            M, top, bottom = bridge_legs(S, j)
            for leg, k in ((top, j), (bottom, j - 1)):
                want = canonical_form(toric_blowup(S, k % len(b)).b)
                if leg is None:
                    # the surface is already that blowup
                    assert cf(M) == want
                else:
                    assert cf(special_fiber(leg)) == want
                    legs += 1
    assert legs > 10


@pytest.mark.parametrize("n", [6, 7])
def test_higher_rank_pairs(n):
    surfaces = enumerate_surfaces(n, -2, 2)[:8]
    for a, b in itertools.combinations(surfaces, 2):
        path = connect_toric(a, b)
        assert ranks(path) == {n - 2}


def test_connect_three_slice_to_its_degeneration():
    M = Multidivisor.make({0: ["-1/2", 0], 1: [0, 1], "inf": [0, 1]}, "circ", "bullet")
    chain, X = degenerate_to_toric(M)
    path = connect(M, X)
    assert len(path) == 1 and path.steps[0].direction == DEGENERATE


def test_connect_corpus_rank4(md_corpus):
    rank4 = [M for M in md_corpus if picard_rank(M) == 4 and not is_toric(M)][:4]
    assert len(rank4) >= 2
    for M, Mp in itertools.combinations(rank4, 2):
        path = connect(M, Mp)
        assert check_path(path) and ranks(path) == {4}


def test_path_serialization_and_reversal():
    path = connect_toric((1, 1, 1, 0, 0), (-1, 0, 2, 1, 1))
    again = path_from_dict(path.to_dict())
    assert again.steps == path.steps
    back = path.reversed()
    assert check_path(back)
    assert [s.direction for s in back.steps] == [
        DEFORM if s.direction == DEGENERATE else DEGENERATE for s in reversed(path.steps)
    ]


def test_check_path_rejects_broken_chain():
    d = hirzebruch_diagram(1, 1)
    bad = DeformationPath(d.M, d.M, (DeformationStep(d, DEGENERATE),))
    with pytest.raises(InternalInconsistency):
        check_path(bad)


def test_shorten_cancels_back_and_forth():
    d = hirzebruch_diagram(1, 1)
    steps = (DeformationStep(d, DEGENERATE), DeformationStep(d, DEFORM))
    path = DeformationPath(d.M, d.M, steps)
    assert len(shorten(path)) == 0


def test_transport_empty_path():
    X = rays_from_b((1, 1, 1, 0, 0))
    A = canonical_system(X)
    assert transport_along_path(connect_toric(X, X), A) == [A]


def test_transport_canonical_system_keeps_tv():
    X = rays_from_b((1, 1, 1, 0, 0))
    for b in enumerate_surfaces(5, -3, 3):
        path = connect_toric(X, b)
        images = transport_along_path(path, canonical_system(X))
        assert len(images) == len(path) + 1
        assert {tv_of(A).b for A in images} == {X.b}


def test_transport_target_system_keeps_tv():
    X, Y = rays_from_b((1, 1, 1, 0, 0)), rays_from_b((-1, 0, 2, 1, 1))
    A = toricsys_for_target(X, Y)
    for A_k in transport_along_path(connect_toric(X, (-2, 0, 3, 1, 1)), A):
        assert tv_of(A_k).b == Y.b


def test_transport_along_hirzebruch_step():
    d = hirzebruch_diagram(1, 1)
    path = DeformationPath(d.M, special_fiber(d), (DeformationStep(d, DEGENERATE),))
    images = transport_along_path(path, catalog_A(d.M, 2))
    assert same_surface(images[-1].surface, special_fiber(d))
