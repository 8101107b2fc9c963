from fractions import Fraction

import pytest

from cstar.errors import NotASurface, NotContractible, PreconditionViolated
from cstar.toric_core import (
    Undefined,
    alpha_gamma,
    as_surface,
    b_from_rays,
    canonical,
    canonical_form,
    cf_eval,
    cohomology,
    deformation_general_fiber,
    enumerate_surfaces,
    euler_char,
    intersection,
    is_isomorphic,
    rays_from_b,
    toric_blowdown,
    toric_blowup,
    validate_toric,
)

F1 = (0, 1, 0, -1)


def test_cf_eval_values():
    assert cf_eval([3]) == 3
    assert cf_eval([1, 1]) == 0
    assert cf_eval([2, 2]) == Fraction(3, 2)


def test_cf_eval_division_by_zero():
    assert cf_eval([5, 0]) is Undefined


def test_rays_of_f1():
    assert rays_from_b(F1).rays == ((1, 0), (0, 1), (-1, 1), (0, -1))


def test_rays_of_projective_plane():
    assert rays_from_b((-1, -1, -1)).rays == ((1, 0), (0, 1), (-1, -1))


@pytest.mark.parametrize("b", [(0, 0, 0), (1, 1, 1), (2, 1, 0, -1)])
def test_rays_reject(b):
    with pytest.raises(NotASurface):
        rays_from_b(b)


def test_b_from_rays_round_trip():
    for n in (4, 5, 6):
        for b in enumerate_surfaces(n, -3, 3):
            assert b_from_rays(rays_from_b(b).rays) == b


def test_validate_reports():
    rep = validate_toric(F1)
    assert rep.ok and rep.info["picard_number"] == 2
    rep = validate_toric((1, 1, 1, 0, 0))
    assert rep.ok and rep.info["picard_number"] == 3
    assert not validate_toric((2, 1, 0, -1)).ok


def test_alpha_gamma():
    ag = alpha_gamma(as_surface((-3, 0, 3, 0)))
    assert (ag.alpha, ag.gamma) == (2, 0)
    ag = alpha_gamma(as_surface((-2, 1, 1, 3, 0)))
    assert (ag.alpha, ag.gamma) == (3, 1)
    with pytest.raises(PreconditionViolated):
        alpha_gamma(as_surface(F1))


def test_alpha_is_first_zero_of_continued_fraction():
    for n in (5, 6, 7):
        for b in enumerate_surfaces(n, -4, 4):
            if b[0] >= 0:
                continue
            a = alpha_gamma(as_surface(b)).alpha
            assert cf_eval(b[1:a]) == 0
            assert all(cf_eval(b[1:k]) != 0 for k in range(2, a))


def test_blowup_and_blowdown():
    assert toric_blowup(as_surface((0, 0, 0, 0)), 0).b == (1, 1, 1, 0, 0)
    assert toric_blowdown(as_surface((1, 1, 1, 0, 0)), 1).b == (0, 0, 0, 0)
    with pytest.raises(NotContractible):
        toric_blowdown(as_surface(F1), 0)


def test_blowdown_inverts_blowup():
    for b in enumerate_surfaces(5, -3, 3):
        X = as_surface(b)
        for i in range(len(b)):
            assert toric_blowdown(toric_blowup(X, i), i + 1).b == b


def test_deformation_examples():
    assert deformation_general_fiber(as_surface((-3, 0, 3, 0)), 1).b == (-1, 0, 1, 0)
    assert deformation_general_fiber(as_surface((-3, 0, 3, 0)), 0).b == (-3, 0, 3, 0)
    assert deformation_general_fiber(as_surface((-2, 1, 1, 3, 0)), 1).b == (1, 1, 1, 0, 0)
    with pytest.raises(PreconditionViolated):
        deformation_general_fiber(as_surface((-3, 0, 3, 0)), 4)


def test_intersection_numbers_on_f1():
    X = as_surface(F1)
    e = lambda i: [int(k == i) for k in range(4)]
    assert intersection(X, e(1), e(1)) == -1
    assert intersection(X, e(0), e(2)) == 0
    K = canonical(X)
    assert K == (-1, -1, -1, -1)
    assert intersection(X, K, K) == 8


def test_euler_characteristic():
    X = as_surface(F1)
    assert euler_char(X, [0, 0, 0, 0]) == 1
    assert euler_char(X, [1, 1, 1, 1]) == 9
    for r in range(4):
        assert euler_char(as_surface((0, r, 0, -r)), [0, 0, 1, 0]) == 2


def test_cohomology_examples():
    X = as_surface(F1)
    # Q = D_3 has square 1
    assert intersection(X, [0, 0, 0, 1], [0, 0, 0, 1]) == 1
    assert cohomology(X, [0, 0, 0, 1]) == (3, 0, 0)
    assert cohomology(X, [0, 0, 0, 0]) == (1, 0, 0)
    assert cohomology(X, [-1, -1, -1, -1]) == (0, 0, 1)


def test_cohomology_sweep_small():
    for b in enumerate_surfaces(4, -2, 2) + enumerate_surfaces(5, -2, 2):
        X = as_surface(b)
        n = len(b)
        for k in range(3 ** n):
            D = [(k // 3**i) % 3 - 1 for i in range(n)]
            h = cohomology(X, D)
            assert h[0] - h[1] + h[2] == euler_char(X, D)
            assert cohomology(X, [-1 - a for a in D]) == h[::-1]


def test_isomorphism_up_to_dihedral_symmetry():
    assert is_isomorphic(as_surface((0, 1, 0, -1)), as_surface((1, 0, -1, 0)))
    assert is_isomorphic(as_surface((1, 1, 1, 0, 0)), as_surface((0, 0, 1, 1, 1)))
    assert canonical_form((0, -1, 0, 1)) == canonical_form((0, 1, 0, -1))
