from hypothesis import strategies as st

from frobskew.poly import Polynomial, PolyRing

RINGS = {
    (p, n): PolyRing(p, ["x", "y", "z"][:n])
    for p in (2, 3, 5) for n in (1, 2, 3)
}


def polys(ring, max_exp=2, max_terms=4):
    exps = st.tuples(*[st.integers(0, max_exp)] * ring.n)
    return st.dictionaries(exps, st.integers(1, ring.p - 1), max_size=max_terms).map(
        lambda d: Polynomial(ring, d))


def nonzero_polys(ring, max_exp=2, max_terms=4):
    return polys(ring, max_exp, max_terms).filter(bool)


rings = st.sampled_from(sorted(RINGS.values(), key=repr))
small_rings = st.sampled_from([RINGS[(p, n)] for p in (2, 3, 5) for n in (1, 2)])


@st.composite
def ring_and_polys(draw, count=2, ring_strategy=rings, max_exp=2):
    R = draw(ring_strategy)
    return (R,) + tuple(draw(polys(R, max_exp)) for _ in range(count))


@st.composite
def ring_and_ideal(draw, ring_strategy=small_rings, max_gens=2, max_exp=2):
    R = draw(ring_strategy)
    gens = draw(st.lists(nonzero_polys(R, max_exp, 3), min_size=1, max_size=max_gens))
    return R, gens
