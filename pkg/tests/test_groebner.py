import random

import pytest
from hypothesis import given
from hypothesis import strategies as st
from oracles import sympy_basis, sympy_member
from strategies import ring_and_ideal, ring_and_polys

from frobskew.groebner import (
    ResourceError,
    eliminate,
    frobenius_preimage_gens,
    normal_form,
    reduced_groebner,
)
from frobskew.poly import PolyRing, RingMismatch


def as_set(gb):
    return {frozenset(g.terms.items()) for g in gb}


def test_normal_form_hand_division():
    R = PolyRing(2, ["x", "y"], "lex")
    basis = R.parse_list("x^2+y, y^2+y")
    assert normal_form(R.parse("x^2*y"), basis) == R.parse("y")
    assert normal_form(R.zero(), basis) == R.zero()
    assert normal_form(R.parse("x*y+1"), [R.one()]) == R.zero()


def test_reduced_basis_small_cases():
    R = PolyRing(2, ["x"])
    assert reduced_groebner([], R) == []
    assert reduced_groebner(R.parse_list("x^2, x^2+x"), R) == [R.parse("x")]


def test_unit_generator_anywhere_in_list():
    R = PolyRing(2, ["t"])
    for gens in ("t^2, 1, t", "t, t^2, 1", "1"):
        assert reduced_groebner(R.parse_list(gens), R) == [R.one()]


def test_eliminate_examples():
    R = PolyRing(3, ["x", "y"])
    assert eliminate(R.parse_list("y-x^2"), 1, R) == []
    assert eliminate(R.parse_list("x"), 1, R) == []
    assert eliminate(R.parse_list("x-y, x+y"), 1, R) == [R.parse("y")]
    with pytest.raises(ValueError):
        eliminate(R.parse_list("x"), 3, R)


def test_preimage_examples():
    R = PolyRing(2, ["x"])
    assert frobenius_preimage_gens(R.parse_list("x^2"), 1, R) == [R.parse("x")]
    assert frobenius_preimage_gens(R.parse_list("x^3"), 1, R) == [R.parse("x^2")]
    assert frobenius_preimage_gens(R.parse_list("x"), 1, R) == [R.parse("x")]
    with pytest.raises(ValueError):
        frobenius_preimage_gens(R.parse_list("x"), 0, R)


def test_ring_mismatch_in_basis():
    a, b = PolyRing(2, ["x"]), PolyRing(2, ["y"])
    with pytest.raises(RingMismatch):
        normal_form(a.parse("x"), [b.parse("y")])


def test_pair_limit_is_reported():
    R = PolyRing(3, ["x", "y", "z"])
    gens = R.parse_list("x^3*y+y^3*z+z^3*x, x^2*y^2+z^4+x, x*y*z^2+y^3+1")
    with pytest.raises(ResourceError):
        reduced_groebner(gens, R, pair_limit=2)


@given(ring_and_ideal(max_gens=3))
def test_matches_sympy_reduced_basis(data):
    R, gens = data
    assert as_set(reduced_groebner(gens, R)) == sympy_basis(gens, R)


@given(ring_and_ideal(max_gens=3), st.randoms(use_true_random=False))
def test_permutation_and_duplication_invariance(data, rnd):
    R, gens = data
    ref = reduced_groebner(gens, R)
    shuffled = list(gens) + [gens[0]]
    rnd.shuffle(shuffled)
    assert reduced_groebner(shuffled, R) == ref


@given(ring_and_ideal(), st.data())
def test_membership_coherence(data, draw):
    from strategies import polys
    R, gens = data
    gb = reduced_groebner(gens, R)
    c1, c2, h = (draw.draw(polys(R)) for _ in range(3))
    f = c1 * gens[0]
    g = c2 * gens[-1]
    assert not normal_form(f + g, gb)
    assert not normal_form(f * h, gb)
    nf = normal_form(h, gb)
    assert bool(nf) == (not sympy_member(h, gens, R))
    # the remainder has no monomial divisible by a leading monomial
    for m in nf.terms:
        assert not any(all(a >= b for a, b in zip(m, g.lm)) for g in gb)


@given(ring_and_polys(1), st.integers(1, 2), st.data())
def test_preimage_oracle(data, e, draw):
    from strategies import polys
    R, f = data
    if not f:
        return
    gens = [f * f]
    pre = frobenius_preimage_gens(gens, e, R)
    r = draw.draw(polys(R))
    q = R.p ** e
    gb = reduced_groebner(gens, R)
    assert (not normal_form(r, pre)) == (not normal_form(r ** q, gb))
    for g in pre:
        assert not normal_form(g ** q, gb)


def test_elimination_result_lies_in_subring_and_ideal():
    rng = random.Random(0)
    from oracles import random_gens
    R = PolyRing(3, ["x", "y", "z"])
    for _ in range(5):
        gens = random_gens(rng, R, max_deg=2)
        out = eliminate(gens, 1, R)
        for g in out:
            assert all(m[0] == 0 for m in g.terms)
            assert sympy_member(g, gens, R)
