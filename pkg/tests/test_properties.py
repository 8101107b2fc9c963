"""Structural invariants on randomly generated surfaces."""

from hypothesis import assume, given, settings, strategies as st

from cstar.multidivisor import GenericFiber, from_fan, invariant_prime_divisors, is_smooth, picard_rank, to_fan
from cstar.corpus import random_multidivisors
from cstar.picard_transport import picard_lattice
from cstar.toric_core import (
    canonical,
    canonical_form,
    cohomology,
    euler_char,
    intersection,
    rays_from_b,
    toric_blowup,
    validate_toric,
)

CASES = 250


@st.composite
def toric_surfaces(draw, max_blowups=6):
    r = draw(st.integers(0, 6))
    X = rays_from_b((0, r, 0, -r))
    for _ in range(draw(st.integers(0, max_blowups))):
        X = toric_blowup(X, draw(st.integers(0, X.n_rays - 1)))
    return X


@given(toric_surfaces())
@settings(max_examples=CASES, deadline=None)
def test_sum_rule_and_noether(X):
    l = X.n_rays - 1
    assert validate_toric(X.b).ok
    assert sum(X.b) == 3 * l - 9
    K = canonical(X)
    assert intersection(X, K, K) + X.picard_number == 10


@given(toric_surfaces())
@settings(max_examples=CASES, deadline=None)
def test_adjunction_on_invariant_curves(X):
    K = canonical(X)
    for i in range(X.n_rays):
        D = [int(k == i) for k in range(X.n_rays)]
        assert intersection(X, D, D) + intersection(X, D, K) == -2


@given(toric_surfaces(max_blowups=4), st.data())
@settings(max_examples=CASES, deadline=None)
def test_riemann_roch_and_serre_duality(X, data):
    D = data.draw(st.lists(st.integers(-5, 5), min_size=X.n_rays, max_size=X.n_rays))
    h = cohomology(X, D)
    assert min(h) >= 0
    assert h[0] - h[1] + h[2] == euler_char(X, D)
    assert cohomology(X, [-1 - a for a in D]) == h[::-1]


@given(toric_surfaces(), st.data())
@settings(max_examples=CASES, deadline=None)
def test_fan_multidivisor_round_trip(X, data):
    negatives = [i for i, b in enumerate(X.b) if b < 0]
    assume(negatives)
    p = data.draw(st.sampled_from(negatives))
    r = data.draw(st.integers(0, -X.b[p]))
    M, labels = from_fan(X, p, r)
    assert is_smooth(M)
    assert picard_rank(M) == X.picard_number
    assert canonical_form(to_fan(M).surface.b) == canonical_form(X.b)


CORPUS = random_multidivisors(count=120, seed=7)


@given(st.sampled_from(CORPUS))
@settings(max_examples=100, deadline=None)
def test_lattice_invariants_on_c_star_surfaces(M):
    L = picard_lattice(M)
    K = L.canonical
    assert L.rank == picard_rank(M)
    assert L.pair(K, K) + L.rank == 10
    for g in invariant_prime_divisors(M):
        if g != GenericFiber:
            c = L.class_of(g)
            assert L.pair(c, c) + L.pair(K, c) == -2
