from fractions import Fraction as F

import pytest

from cstar.degeneration import (
    DegenerationDiagram,
    InsertVertex,
    ToggleMarker,
    diagram_blowdown,
    diagram_blowup,
    diagram_from_dict,
    exceptional_of_move,
    hirzebruch_diagram,
    legal_moves,
    merge_slices_degeneration,
    special_fiber,
    toric_deformation_diagram,
    validate_diagram,
)
from cstar.errors import InvalidDiagram, NotMinusOne, NotSmoothAfterBlowup, PreconditionViolated
from cstar.multidivisor import (
    INF,
    DPlus,
    Multidivisor,
    from_fan,
    invariant_prime_divisors,
    is_smooth,
    nontrivial_points,
    picard_rank,
    to_fan,
)
from cstar.toric_core import canonical_form, deformation_general_fiber, enumerate_surfaces, rays_from_b

M11 = Multidivisor.make({0: ["-1/2", 0], INF: [0, 1]})
h = F(-1, 2)


def fr(r):
    return canonical_form((0, r, 0, -r))


def diag(edges, M=M11):
    return DegenerationDiagram.make(M, F(0), INF, edges)


def _mirror(d):
    M = Multidivisor.make({p: [-v for v in vs] for p, vs in d.M.slices}, d.M.plus, d.M.minus)
    return DegenerationDiagram.make(M, d.p0, d.ps, [(-a, -b) for a, b in d.edges])


def test_validate_examples():
    rep = validate_diagram(diag([(0, 0), (0, 1), (h, 0)]))
    assert rep.ok and not rep.info["trivial"]
    assert not validate_diagram(diag([(h, 1)])).ok
    assert not validate_diagram(diag([(h, 0), (0, 1)])).ok


def test_crossing_and_high_degree_rejected():
    # (-1/2, 1) and (0, 0) cross
    assert not validate_diagram(diag([(h, 1), (0, 0), (h, 0)])).ok
    # -1/2 with degree two is not a lattice point
    assert not validate_diagram(diag([(h, 0), (h, 1), (0, 1)])).ok


def test_json_round_trip():
    d = hirzebruch_diagram(2, 1)
    assert diagram_from_dict(d.to_dict()) == d


def test_special_fiber_of_m11():
    S = special_fiber(hirzebruch_diagram(1, 1))
    assert S.slice(F(0)) == (h, 0, 1)
    assert canonical_form(to_fan(S).surface.b) == fr(3)
    with pytest.raises(InvalidDiagram):
        special_fiber(diag([(h, 1)]))


@pytest.mark.parametrize("r", range(7))
@pytest.mark.parametrize("a", range(1, 5))
def test_hirzebruch_family(r, a):
    d = hirzebruch_diagram(r, a)
    assert canonical_form(to_fan(d.M).surface.b) == fr(r)
    assert canonical_form(to_fan(special_fiber(d)).surface.b) == fr(r + 2 * a)


def test_alternate_graph():
    d = hirzebruch_diagram(0, 1, alternate=True)
    assert validate_diagram(d).ok
    assert canonical_form(to_fan(special_fiber(d)).surface.b) == fr(2)
    with pytest.raises(PreconditionViolated):
        hirzebruch_diagram(1, 1, alternate=True)


def test_toric_deformation_examples():
    d = toric_deformation_diagram(rays_from_b((-3, 0, 3, 0)), 1)
    assert _mirror(d) == hirzebruch_diagram(1, 1)
    d = toric_deformation_diagram(rays_from_b((-2, 1, 1, 3, 0)), 1)
    assert canonical_form(to_fan(d.M).surface.b) == canonical_form((1, 1, 1, 0, 0))
    assert validate_diagram(toric_deformation_diagram(rays_from_b((-1, 0, 1, 0)), 0)).info["trivial"]


def test_toric_deformation_sweep():
    for n in range(4, 8):
        for b in enumerate_surfaces(n, -5, 5):
            if b[0] >= 0:
                continue
            X = rays_from_b(b)
            for r in range(-b[0] + 1):
                d = toric_deformation_diagram(X, r)
                assert special_fiber(d) == from_fan(X, 0, r)[0]
                gen = deformation_general_fiber(X, r).b
                assert canonical_form(to_fan(d.M).surface.b) == canonical_form(gen)


def test_merge_preconditions():
    with pytest.raises(PreconditionViolated):
        merge_slices_degeneration(M11, F(0), INF)
    d = merge_slices_degeneration(M11, INF, F(0))
    assert validate_diagram(d).ok
    with pytest.raises(PreconditionViolated):
        merge_slices_degeneration(M11, INF, F(5))


def test_merge_three_slices():
    M = Multidivisor.make({0: ["-1/2", 0], 1: [0, 1], INF: [0, 1]}, "circ", "bullet")
    assert is_smooth(M)
    with pytest.raises(PreconditionViolated):
        merge_slices_degeneration(M, F(0), F(1))
    d = merge_slices_degeneration(M, F(1), F(0))
    assert validate_diagram(d).ok
    high = {v for v, k in d.degree0().items() if k > 1} | {w for w, k in d.degrees().items() if k > 1}
    assert high == {F(0)}
    S = special_fiber(d)
    assert len(nontrivial_points(S)) == len(nontrivial_points(M)) - 1
    assert picard_rank(S) == picard_rank(M)


def test_blowdown_on_f3_is_refused():
    d = hirzebruch_diagram(1, 1)
    S = special_fiber(d)
    for E in invariant_prime_divisors(S):
        with pytest.raises(NotMinusOne):
            diagram_blowdown(d, E)


def test_blowup_examples():
    d = hirzebruch_diagram(1, 1)
    up = diagram_blowup(d, InsertVertex(INF, F(1, 2)))
    assert picard_rank(special_fiber(up)) == 3
    up = diagram_blowup(d, ToggleMarker("plus"))
    assert picard_rank(up.M) == 3
    fresh = diagram_blowup(up, InsertVertex(F(2), 1))
    assert fresh.M.slice(F(2)) == (0, 1) and picard_rank(fresh.M) == 4
    with pytest.raises(NotSmoothAfterBlowup):
        diagram_blowup(d, InsertVertex(F(2), 1))
    with pytest.raises(PreconditionViolated):
        diagram_blowup(up, ToggleMarker("plus"))
    with pytest.raises(PreconditionViolated):
        diagram_blowup(d, InsertVertex(INF, 1))
    with pytest.raises(NotSmoothAfterBlowup):
        diagram_blowup(d, InsertVertex(INF, 3))


def test_marker_blowdown():
    d = diagram_blowup(hirzebruch_diagram(1, 1), ToggleMarker("plus"))
    down = diagram_blowdown(d, DPlus)
    assert down == hirzebruch_diagram(1, 1)


def test_blowdown_inverts_blowup(diagram_walks):
    for d, move, up, E in diagram_walks:
        assert diagram_blowdown(up, E) == d
        assert picard_rank(special_fiber(up)) == picard_rank(up.M)


def test_every_legal_move_is_reversible():
    for r in range(3):
        for a in (1, 2):
            d = hirzebruch_diagram(r, a)
            for m, up in legal_moves(d):
                assert diagram_blowdown(up, exceptional_of_move(d, m, up)) == d
