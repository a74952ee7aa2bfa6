"""Acceptance criteria, one test each.

Every criterion prints a single PASS/FAIL line with its runtime, then
asserts both the mathematical outcome and the time budget.
"""

import random
import time

import finite_suite
import pytest
from oracles import random_gens, random_poly, random_ring, sympy_basis, sympy_member

from frobskew.groebner import _buchberger, _gb_cached, normal_form, reduced_groebner
from frobskew.ideal import (
    Ideal,
    QuotientRing,
    colon_element,
    frobenius_closure,
    frobenius_closure_chain,
    frobenius_power,
    frobenius_preimage,
    has_positive_height,
    is_radical,
    is_regular_sequence,
    zero_ideal,
)
from frobskew.localcoh import SopData, enescu_zqr, tc_param_membership
from frobskew.modules import (
    FiniteCyclicsModule,
    hsl_number,
    maximal_special_primes,
    smallest_positive_height_ideal,
    special_ideal_lattice,
)
from frobskew.poly import PolyRing

SEED = 20240611

# regression baseline for the Fermat cubic check, computed by the colon-chain
# oracle at bound 2 and frozen here
FERMAT_Z2_MEMBER = True


def _report(capsys, number, ok, elapsed, budget, detail):
    status = "PASS" if ok and elapsed < budget else "FAIL"
    with capsys.disabled():
        print(f"\ncriterion {number}: {status}  {elapsed:.2f}s / {budget}s  {detail}")


def _run(capsys, number, budget, fn):
    start = time.perf_counter()
    ok, detail = fn()
    elapsed = time.perf_counter() - start
    _report(capsys, number, ok, elapsed, budget, detail)
    assert ok, detail
    assert elapsed < budget, f"{elapsed:.1f}s over the {budget}s budget"


def _basis_key(terms_list):
    return frozenset(frozenset(t.items()) for t in terms_list)


# -- 1 ------------------------------------------------------------------------------

def groebner_determinism(count=200):
    rng = random.Random(SEED)
    bad = []
    for i in range(count):
        R = random_ring(rng)
        gens = random_gens(rng, R, k=rng.randint(1, 4), max_deg=4)
        # the raw engine sees each permutation in its own order
        bases = set()
        for _ in range(3):
            order = gens[:]
            rng.shuffle(order)
            raw = _buchberger([g.terms for g in order], R.key, R.p, 50_000)
            bases.add(_basis_key(t for _, t in raw))
        _gb_cached.cache_clear()
        gb = reduced_groebner(gens[::-1], R)
        bases.add(_basis_key(g.terms for g in gb))
        ok = len(bases) == 1 and _basis_key(g.terms for g in gb) == _basis_key(
            dict(t) for t in sympy_basis(gens, R))
        ok &= all(not normal_form(g, gb) for g in gens)
        for _ in range(3):
            comb = sum((random_poly(rng, R, 2) * g for g in gens), R.zero())
            ok &= not normal_form(comb, gb)
            r = random_poly(rng, R, 4)
            ok &= (not normal_form(r, gb)) == sympy_member(r, gens, R)
        if not ok:
            bad.append(i)
    return not bad, f"{count} ideals, mismatches {bad}"


def test_criterion_1_groebner_determinism(capsys):
    _run(capsys, 1, 60, groebner_determinism)


# -- 2 ------------------------------------------------------------------------------

def preimage_oracle(count=500):
    rng = random.Random(SEED + 2)
    checked = agree = positives = 0
    n = 0
    while n < count:
        R = random_ring(rng)
        if rng.random() < 1 / 3:
            gens = [g * g for g in random_gens(rng, R, max_deg=2)]
        else:
            gens = random_gens(rng, R, max_deg=4)
        b = Ideal(R, gens)
        if b.is_unit():
            continue
        n += 1
        e = rng.randint(1, 2)
        pre = frobenius_preimage(b, e)
        if rng.random() < 0.5 and pre.gb:
            r = rng.choice(pre.gb) * random_poly(rng, R, 2)
        else:
            r = random_poly(rng, R, 3)
        inside = r in pre
        oracle = not normal_form(r.frobenius(e), b.gb)
        checked += 1
        agree += inside == oracle
        positives += inside
    return agree == checked, f"{agree}/{checked} agree ({positives} members)"


def test_criterion_2_preimage_oracle(capsys):
    _run(capsys, 2, 60, preimage_oracle)


# -- 3 ------------------------------------------------------------------------------

def regular_closure(count=100):
    rng = random.Random(SEED + 3)
    bad = []
    n = 0
    while n < count:
        R = PolyRing(rng.choice((2, 3, 5)), ["x", "y"])
        a = Ideal(R, random_gens(rng, R, k=rng.randint(1, 3), max_deg=4))
        if a.is_unit() or a.is_zero():
            continue
        n += 1
        if frobenius_closure(a, 3) != (a, True):
            bad.append(str(a))
    return not bad, f"{count} proper ideals, failures {bad}"


def test_criterion_3_regular_closure(capsys):
    _run(capsys, 3, 120, regular_closure)


# -- 4 ------------------------------------------------------------------------------

def cusp_closure():
    R = QuotientRing(PolyRing(2, ["x", "y", "z"]), "z^2+x^2*y")
    a = Ideal(R, "x, y")
    z = R.parse("z")
    chain = frobenius_closure_chain(a, 1)
    in_closure = z in chain[1]
    # z^2 = x^2 y lies in (x^2, y^2): check against the ambient basis directly
    lift = reduced_groebner(R.ambient.parse_list("x^2, y^2, z^2+x^2*y"))
    oracle = not normal_form(R.ambient.parse("z^2"), lift)
    outside = z not in a and bool(normal_form(R.ambient.parse("z"),
                                              reduced_groebner(R.ambient.parse_list("x, y, z^2+x^2*y"))))
    return in_closure and oracle and outside, f"z in (x,y)^F at e=1: {in_closure}; z in (x,y): {not outside}"


def test_criterion_4_cusp_closure(capsys):
    _run(capsys, 4, 5, cusp_closure)


# -- 5 ------------------------------------------------------------------------------

def node_lattice():
    F2st = PolyRing(2, ["s", "t"])
    G = FiniteCyclicsModule.frobenius(F2st, ["s*t"])
    gens = [G.element(r) for r in ("s", "t", "s+t", "1")]
    lat = special_ideal_lattice(G, 8, gens)
    want = {Ideal(F2st, g) for g in ("s", "t", "s*t", "1")}
    st, s, t = (Ideal(F2st, g) for g in ("s*t", "s", "t"))
    hand = all(colon_element(st, F2st.parse("s") ** k) == t for k in range(1, 9))
    hand &= all(colon_element(st, F2st.parse("s+t") ** k) == st for k in range(1, 9))
    checks = dict(lat.checks)
    checks["ideals"] = set(lat.ideals) == want
    checks["maximal_primes"] = set(maximal_special_primes(lat)) == {s, t}
    checks["smallest_positive_height"] = smallest_positive_height_ideal(lat) == st
    checks["hand_colons"] = hand
    failed = [k for k, v in checks.items() if not v]
    return not failed, f"ideals {sorted(map(str, lat.ideals))}, failed checks {failed}"


def test_criterion_5_node_lattice(capsys):
    _run(capsys, 5, 30, node_lattice)


# -- 6 ------------------------------------------------------------------------------

def finite_backend():
    results = finite_suite.run_all()
    t2 = next(M for M in finite_suite.modules() if M.label == "t^2")
    bad = {k: v for k, v in results.items() if v}
    hsl_example = hsl_number(t2) == 1
    return not bad and hsl_example, f"{len(results)} modules, counterexamples {bad}"


def test_criterion_6_finite_backend(capsys):
    _run(capsys, 6, 30, finite_backend)


# -- 7 ------------------------------------------------------------------------------

def nodal_tight_closure():
    F2st = PolyRing(2, ["s", "t"])
    R = QuotientRing(F2st, "s*t")
    sop = SopData.of(R, R.parse_list("s+t"))
    s, t = R.parse("s"), R.parse("t")
    maximal = Ideal(R, "s, t")
    checks = {"regular_sequence": sop.verified and is_regular_sequence(R.parse_list("s+t"), R)}
    rep = tc_param_membership(sop, s, 1, "chain", 4)
    checks["member"] = rep["member"] is True and rep["stabilized"]
    checks["chain_constant"] = rep["chain"] == ["(s, t)"] and rep["limit"] == "(s, t)"
    checks["positive_height"] = has_positive_height(maximal)
    q = Ideal(R, "s+t")
    checks["colon_oracle"] = all(
        colon_element(frobenius_power(q, m), s.frobenius(m)) == maximal for m in range(5))
    checks["integral_identity"] = (s * s - s * (s + t)) in zero_ideal(R) and s * s in q
    z = enescu_zqr(sop, [s, t])
    checks["enescu_maximal"] = z.maximal == [maximal] and z.radical == [True]
    # a linear proper ideal of the lift is prime
    lift = reduced_groebner(list(maximal.gb) + list(R.defining_gens), F2st)
    checks["enescu_prime"] = all(g.degree() == 1 for g in lift) and is_radical(maximal)
    failed = [k for k, v in checks.items() if not v]
    return not failed, f"member {rep['member']}, limit {rep['limit']}, failed checks {failed}"


def test_criterion_7_nodal_tight_closure(capsys):
    _run(capsys, 7, 30, nodal_tight_closure)


# -- 8 ------------------------------------------------------------------------------

def regular_triviality():
    F2xy = PolyRing(2, ["x", "y"])
    sop = SopData.of(F2xy, F2xy.parse_list("x, y"))
    rep = tc_param_membership(sop, F2xy.one(), 1, "chain", 4)
    ok = rep["member"] is False and rep["limit"] == "(0)" and rep["positive_height"] is False
    z = enescu_zqr(sop, [F2xy.one()])
    ok &= [str(b) for b in z.maximal] == ["(0)"]
    return ok, f"member {rep['member']}, limit {rep['limit']}, maximal {[str(b) for b in z.maximal]}"


def test_criterion_8_regular_triviality(capsys):
    _run(capsys, 8, 10, regular_triviality)


# -- 9 ------------------------------------------------------------------------------

def fermat_cubic():
    F7 = PolyRing(7, ["x", "y", "z"])
    R = QuotientRing(F7, "x^3+y^3+z^3")
    sop = SopData.of(R, R.parse_list("x, y"))
    z2 = R.parse("z^2")
    rep = tc_param_membership(sop, z2, 1, "chain", 2)
    entries = [Ideal(R, e[1:-1]) if e != "(0)" else zero_ideal(R) for e in rep["chain"]]
    ascending = all(lo.issubset(hi) for lo, hi in zip(entries, entries[1:]))
    top = has_positive_height(entries[-1])
    outside = z2 not in Ideal(R, "x, y")
    baseline = rep["member"] is FERMAT_Z2_MEMBER
    ok = ascending and top and outside and baseline
    return ok, (f"chain {rep['chain']}, top positive height {top}, "
                f"z^2 in (x,y): {not outside}, member {rep['member']}")


@pytest.mark.slow
def test_criterion_9_fermat_cubic(capsys):
    _run(capsys, 9, 300, fermat_cubic)
