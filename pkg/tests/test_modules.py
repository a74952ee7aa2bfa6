import finite_suite
import pytest

from frobskew.groebner import ResourceError
from frobskew.ideal import (
    Ideal,
    QuotientRing,
    Refusal,
    frobenius_preimage,
    unit_ideal,
    zero_ideal,
)
from frobskew.modules import (
    CyclicTower,
    FiniteCyclicsModule,
    ann_of_chain,
    ga15_equivalence_check,
    gamma_x,
    grann_element,
    grann_submodule,
    hsl_number,
    is_x_torsion_free,
    maximal_special_primes,
    smallest_positive_height_ideal,
    special_ideal_lattice,
    split_ga4,
    x_action,
)
from frobskew.modules import test_element_annihilator as element_annihilator
from frobskew.poly import PolyRing
from frobskew.radical import RadicalDecomposition
from frobskew.skew import limit_ideal, principal_chain, unit_chain, zero_chain

F2xy = PolyRing(2, ["x", "y"])
F2st = PolyRing(2, ["s", "t"])
F2t = PolyRing(2, ["t"])
NODE = QuotientRing(F2st, "s*t")


def node_module():
    return FiniteCyclicsModule.frobenius(F2st, ["s*t"])


def lim(chain):
    return limit_ideal(chain)[0]


# -- x-action, torsion and HSL numbers -----------------------------------------------

def test_x_action_examples():
    H = CyclicTower.H(Ideal(F2xy, "x, y"))
    assert x_action(H, H.element(0, F2xy.parse("x+y"))) == H.element(1, F2xy.zero())
    assert x_action(H, H.element(2, F2xy.zero())) == H.element(3, F2xy.zero())
    M = FiniteCyclicsModule.frobenius(F2t, ["t^2"])
    assert M.is_zero(x_action(M, M.element("t")))


def test_tower_past_working_bound():
    H = CyclicTower.H(Ideal(F2xy, "x, y"), working_bound=2)
    with pytest.raises(ResourceError):
        H.b(3)


def test_gamma_x_examples():
    M = FiniteCyclicsModule.frobenius(F2t, ["t^2"])
    tors = gamma_x(M)
    assert set(tors.elements) == {M.element("0"), M.element("t")}
    free = FiniteCyclicsModule.frobenius(F2t, ["t"])
    assert gamma_x(free).is_zero()
    H = CyclicTower.H(Ideal(F2xy, "x, y"), working_bound=4)
    tors = gamma_x(H, bound=2)
    for n in range(3):
        for r in ("x", "y", "x+y", "1", "x*y+x"):
            h = H.element(n, F2xy.parse(r))
            assert (h in tors) == H.is_zero(h)


def test_hsl_examples():
    assert hsl_number(FiniteCyclicsModule.frobenius(F2t, ["t^2"])) == 1
    assert hsl_number(FiniteCyclicsModule.frobenius(F2t, ["t"])) == 0
    zero_x = FiniteCyclicsModule(F2t, ["t^2"], [[F2t.zero()]])
    assert hsl_number(zero_x) == 1
    with pytest.raises(Refusal):
        hsl_number(node_module())


def test_bad_x_matrix_rejected():
    with pytest.raises(ValueError):
        FiniteCyclicsModule(F2t, ["t^3", "t"], [[F2t.one(), F2t.one()], [F2t.zero(), F2t.one()]])
    ok = FiniteCyclicsModule(F2t, ["t^3", "t"], [[F2t.one(), F2t.zero()], [F2t.one(), F2t.one()]])
    assert ok.is_well_defined()


# -- graded annihilators -------------------------------------------------------------

def test_grann_element_examples():
    G = node_module()
    c = grann_element(G, G.element("s"))
    assert c.certified and c.stable_from == 0 and lim(c) == Ideal(F2st, "t")
    assert lim(grann_element(G, G.element("s+t"))) == Ideal(F2st, "s*t")
    assert lim(grann_element(G, G.zero())) == unit_ideal(F2st)


def test_grann_on_tower_over_the_node():
    T = CyclicTower.H(zero_ideal(NODE), working_bound=4)
    c = grann_element(T, T.element(0, NODE.parse("s")), bound=3)
    assert c.certified and c.stable_from == 0
    assert lim(c) == Ideal(NODE, "t")
    c = grann_element(T, T.element(0, NODE.parse("s+t")), bound=3)
    assert lim(c) == zero_ideal(NODE)


def test_grann_submodule_examples():
    G = node_module()
    s, t = G.element("s"), G.element("t")
    assert lim(grann_submodule(G, [s, t])) == Ideal(F2st, "s*t")
    assert lim(grann_submodule(G, [])) == unit_ideal(F2st)
    assert grann_submodule(G, [s]).entries == grann_element(G, s).entries


def test_grann_finite_chain_is_exact():
    M = FiniteCyclicsModule.frobenius(F2t, ["t^3"])
    c = grann_element(M, M.element("t"))
    # x t = t^2, x^2 t = 0: entries (t^2), (t), (1)
    assert c.certified
    assert [str(e) for e in c.entries] == ["(t^2)", "(t)", "(1)"]


def test_ann_of_chain_examples():
    G = node_module()
    N = ann_of_chain(G, principal_chain(Ideal(F2st, "t")))
    assert G.element("s") in N
    assert G.element("t") not in N and G.element("s+t") not in N
    everything = ann_of_chain(G, zero_chain(F2st))
    assert G.element("s+t+1") in everything
    nothing = ann_of_chain(G, unit_chain(F2st))
    assert nothing.is_zero() and G.element("s") not in nothing


# -- the lattice ---------------------------------------------------------------------

def node_lattice():
    G = node_module()
    gens = [G.element(r) for r in ("s", "t", "s+t", "1")]
    return special_ideal_lattice(G, generators=gens)


def test_lattice_on_the_node():
    lat = node_lattice()
    want = {Ideal(F2st, g) for g in ("s", "t", "s*t", "1")}
    assert set(lat.ideals) == want
    assert set(lat.primes) == {Ideal(F2st, "s"), Ideal(F2st, "t")}
    assert all(lat.checks.values()), lat.checks
    assert not lat.complete
    assert set(maximal_special_primes(lat)) == {Ideal(F2st, "s"), Ideal(F2st, "t")}
    assert smallest_positive_height_ideal(lat) == Ideal(F2st, "s*t")
    js = lat.to_json()
    assert set(js) == {"ideals", "primes", "delta", "complete", "checks"}


def test_lattice_prime_module():
    M = FiniteCyclicsModule.frobenius(F2t, ["t"])
    lat = special_ideal_lattice(M)
    assert set(lat.ideals) == {Ideal(F2t, "t"), unit_ideal(F2t)}
    assert lat.complete and all(lat.checks.values())
    assert maximal_special_primes(lat) == [Ideal(F2t, "t")]
    assert smallest_positive_height_ideal(lat) == Ideal(F2t, "t")


def test_lattice_zero_module():
    M = FiniteCyclicsModule.frobenius(F2t, ["1"])
    lat = special_ideal_lattice(M)
    assert lat.ideals == [unit_ideal(F2t)]
    assert lat.submodules[0].is_zero()
    assert maximal_special_primes(lat) == []
    assert smallest_positive_height_ideal(lat) == unit_ideal(F2t)


def test_lattice_refuses_torsion_and_unenumerable():
    with pytest.raises(Refusal):
        special_ideal_lattice(FiniteCyclicsModule.frobenius(F2t, ["t^2"]))
    with pytest.raises(Refusal):
        special_ideal_lattice(node_module())


def test_lattice_radical_and_sqrt_insensitive():
    G = node_module()
    for b in node_lattice().ideals:
        assert frobenius_preimage(b, 1) == b
    # ann of a and of its root closure agree
    a = Ideal(F2st, "s^2")
    root = frobenius_preimage(a, 1)
    assert root == Ideal(F2st, "s")
    fin = FiniteCyclicsModule.frobenius(F2t, ["t", "t"])
    assert ann_of_chain(G, principal_chain(a)) == ann_of_chain(G, principal_chain(root))
    assert (ann_of_chain(fin, principal_chain(Ideal(F2t, "t^2")))
            == ann_of_chain(fin, principal_chain(Ideal(F2t, "t"))))


def test_dcc_on_submodules():
    M = FiniteCyclicsModule.frobenius(F2t, ["t", "t", "t"])
    lat = special_ideal_lattice(M)
    subs = sorted(lat.submodules, key=len, reverse=True)
    longest = 1
    for i, a in enumerate(subs):
        run = 1
        cur = a
        for b in subs[i + 1:]:
            if b.issubset(cur) and b != cur:
                run += 1
                cur = b
        longest = max(longest, run)
    assert longest <= len(lat.ideals)


# -- splitting and test elements -------------------------------------------------------

def test_split_examples():
    G = node_module()
    b = RadicalDecomposition.parse(F2st, "(s); (t)")
    rep = split_ga4(G, b, [Ideal(F2st, "s")])
    assert rep["ok"], rep["checks"]
    assert rep["a"] == "(s)" and rep["c"] == "(t)" and rep["quotient_ideal"] == "(t)"
    swap = split_ga4(G, b, [Ideal(F2st, "t")])
    assert swap["ok"] and swap["a"] == "(t)" and swap["c"] == "(s)"
    with pytest.raises(Refusal):
        split_ga4(G, RadicalDecomposition.parse(F2st, "(s)"), [0])


def test_split_on_finite_module():
    R = PolyRing(2, ["s", "t"])
    M = FiniteCyclicsModule.frobenius(R, ["s, t^2+t", "t, s^2+s"])
    assert M.is_finite()
    lat = special_ideal_lattice(M)
    primes = lat.primes
    assert len(primes) >= 2
    b = RadicalDecomposition(R, tuple(primes[:2]))
    rep = split_ga4(M, b, [0])
    assert rep["ok"], rep["checks"]


def test_test_element_examples():
    H = CyclicTower.H(Ideal(F2xy, "x, y"), working_bound=6)
    assert element_annihilator(H, F2xy.parse("x+y"), 0, H.element(0, F2xy.parse("x")), 4)
    assert not element_annihilator(H, F2xy.parse("x*y"), 0, H.element(0, F2xy.one()), 4)
    R = QuotientRing(PolyRing(2, ["x", "y", "z"]), "z^2+x^2*y")
    HR = CyclicTower.H(Ideal(R, "x, y"), working_bound=4)
    assert element_annihilator(HR, R.parse("1"), 1, HR.element(0, R.parse("z")), 3)
    with pytest.raises(ValueError):
        element_annihilator(H, F2xy.zero(), 0, H.element(0, F2xy.one()), 2)


def test_ga15_examples():
    M = FiniteCyclicsModule.frobenius(F2t, ["t^2"])
    rep = ga15_equivalence_check(M)
    assert rep["hsl"] == 1 and rep["b"] == "(t)" and not rep["counterexamples"]
    rows = {r["element"]: r for r in rep["rows"]}
    assert all(rows["t"][k] for k in ("i", "ii", "iii", "iv"))
    assert all(rows["0"][k] for k in ("i", "ii", "iii", "iv"))
    free = ga15_equivalence_check(FiniteCyclicsModule.frobenius(F2t, ["t"]))
    assert free["hsl"] == 0 and not free["counterexamples"]


# -- exhaustive finite suite -----------------------------------------------------------

@pytest.mark.parametrize("M", finite_suite.modules(), ids=lambda M: M.label)
def test_finite_module_suite(M):
    assert finite_suite.run_module(M) == []


def test_torsion_free_probe_on_towers():
    assert is_x_torsion_free(CyclicTower.H(Ideal(F2xy, "x, y"), working_bound=3), bound=3)
    R = QuotientRing(PolyRing(2, ["x", "y", "z"]), "z^2+x^2*y")
    assert not is_x_torsion_free(CyclicTower.H(Ideal(R, "x, y"), working_bound=3), bound=3)
