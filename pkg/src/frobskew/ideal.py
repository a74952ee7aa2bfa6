"""Ideals of F_p[x] and of quotients F_p[x]/I.

Every ideal of a quotient is stored through its lift: the generators are
ambient polynomials and the cached Groebner basis is that of ``gens + I``.
Membership, equality and containment all reduce to the lift.
"""

from __future__ import annotations

from functools import cached_property
from itertools import combinations

from .groebner import (
    eliminate,
    frobenius_preimage_gens,
    normal_form,
    reduced_groebner,
)
from .poly import Polynomial, PolyRing, RingMismatch


class Refusal(ValueError):
    """A precondition that the artifact will not guess around."""


class QuotientRing:
    """``ambient / defining`` with a cached Krull dimension.

    Height and R-circle tests compare dimensions, which is only sound on an
    equidimensional ring; pass ``equidimensional_assumed=True`` to allow them.
    """

    def __init__(self, ambient: PolyRing, defining, equidimensional_assumed: bool | None = None):
        if isinstance(defining, str):
            defining = ambient.parse_list(defining)
        defining = [ambient(g) for g in defining]
        gb = reduced_groebner(defining, ambient)
        if gb and gb[0].is_constant():
            raise ValueError("defining ideal is the unit ideal")
        self._ambient = ambient
        self.defining_gens = tuple(gb)
        # a complete intersection is unmixed, so the flag can be certified
        self.complete_intersection = _is_ci(defining, ambient)
        if equidimensional_assumed is None:
            equidimensional_assumed = self.complete_intersection
        self.equidimensional_assumed = equidimensional_assumed

    @property
    def ambient(self) -> PolyRing:
        return self._ambient

    @property
    def p(self) -> int:
        return self._ambient.p

    @property
    def variables(self):
        return self._ambient.variables

    @cached_property
    def dim(self) -> int:
        return _dim_from_gb(self._ambient, list(self.defining_gens))

    def same_space(self, other) -> bool:
        return (isinstance(other, QuotientRing)
                and self._ambient.same_space(other._ambient)
                and self.defining_gens == other.defining_gens)

    def __eq__(self, other):
        return self.same_space(other)

    def __hash__(self):
        return hash((self._ambient, self.defining_gens))

    def __call__(self, x) -> Polynomial:
        return self._ambient(x)

    def parse(self, text) -> Polynomial:
        return self._ambient.parse(text)

    def parse_list(self, text):
        return self._ambient.parse_list(text)

    def reduce(self, f: Polynomial) -> Polynomial:
        """Canonical representative of f modulo the defining ideal."""
        return normal_form(self._ambient(f), self.defining_gens)

    def __repr__(self):
        gens = ", ".join(map(str, self.defining_gens))
        return f"QuotientRing({self._ambient!r} / ({gens}))"


def _is_ci(gens, ambient) -> bool:
    gens = [g for g in gens if g]
    return bool(gens) and _regular(gens, ambient)


def _same_ring(r1, r2) -> bool:
    if isinstance(r1, QuotientRing) or isinstance(r2, QuotientRing):
        return isinstance(r1, QuotientRing) and r1.same_space(r2)
    return r1.same_space(r2)


class Ideal:
    """Ideal of a PolyRing or QuotientRing, compared by reduced basis."""

    def __init__(self, ring, gens=()):
        if isinstance(gens, str):
            gens = ring.parse_list(gens)
        amb = ring.ambient
        self.ring = ring
        self.gens = tuple(amb(g) for g in gens)

    @cached_property
    def gb(self) -> tuple:
        amb = self.ring.ambient
        return tuple(reduced_groebner(list(self.gens) + list(self.ring.defining_gens), amb))

    @property
    def ambient(self) -> PolyRing:
        return self.ring.ambient

    def is_unit(self) -> bool:
        return bool(self.gb) and self.gb[0].is_constant()

    def is_zero(self) -> bool:
        return self.gb == tuple(self.ring.defining_gens)

    def reduce(self, f) -> Polynomial:
        return normal_form(self.ambient(f), self.gb)

    def __contains__(self, f) -> bool:
        return not self.reduce(f)

    def issubset(self, other: "Ideal") -> bool:
        _check(self, other)
        return all(g in other for g in self.gb)

    def __le__(self, other):
        return self.issubset(other)

    def __lt__(self, other):
        return self.issubset(other) and self != other

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return _same_ring(self.ring, other.ring) and self.gb == other.gb

    def __hash__(self):
        return hash(self.gb)

    def __add__(self, other: "Ideal") -> "Ideal":
        _check(self, other)
        return Ideal(self.ring, self.gb + other.gb)

    def __mul__(self, other: "Ideal") -> "Ideal":
        _check(self, other)
        return Ideal(self.ring, [f * g for f in self.gb for g in other.gb])

    def with_ring(self, ring) -> "Ideal":
        return Ideal(ring, self.gb)

    @cached_property
    def essential_gens(self) -> tuple:
        """Reduced basis elements of the lift not implied by the others plus I."""
        defining = list(self.ring.defining_gens)
        if not defining:
            return self.gb
        kept = [g for g in self.gb if normal_form(g, defining)]
        amb = self.ambient
        for g in list(kept):
            rest = [h for h in kept if h != g]
            if not normal_form(g, reduced_groebner(rest + defining, amb)):
                kept = rest
        return tuple(kept)

    @property
    def display_gens(self) -> tuple:
        """essential_gens sorted by degree, then by the monomial order."""
        key = self.ambient.key
        return tuple(sorted(self.essential_gens,
                            key=lambda g: (sum(g.lm), tuple(-v for v in key(g.lm)))))

    def __str__(self):
        gens = self.display_gens
        if not gens:
            return "(0)"
        return "(" + ", ".join(map(str, gens)) + ")"

    def __repr__(self):
        return f"Ideal{self}"


def _check(a: Ideal, b: Ideal):
    if not _same_ring(a.ring, b.ring):
        raise RingMismatch(f"{a.ring!r} vs {b.ring!r}")


def unit_ideal(ring) -> Ideal:
    return Ideal(ring, [ring.ambient.one()])


def zero_ideal(ring) -> Ideal:
    return Ideal(ring, [])


def ideal(ring, gens) -> Ideal:
    return Ideal(ring, gens)


# -- arithmetic -------------------------------------------------------------

def member(r, a: Ideal) -> bool:
    if isinstance(r, Polynomial) and not a.ambient.same_space(r.ring):
        raise RingMismatch(f"{r.ring} vs {a.ring!r}")
    return r in a


def intersect(a: Ideal, b: Ideal) -> Ideal:
    """a ∩ b by eliminating t from t*a + (1-t)*b."""
    _check(a, b)
    if a.issubset(b):
        return a
    if b.issubset(a):
        return b
    amb = a.ambient
    big = amb.extend(["_t"], ("elim", 1))
    t = big.var(0)
    lift = list(range(1, big.n))
    ta = [t * g.change_ring(big, lift) for g in a.gb]
    tb = [(1 - t) * g.change_ring(big, lift) for g in b.gb]
    elim = eliminate(ta + tb, 1, big)
    gens = [Polynomial(amb, {m[1:]: c for m, c in g.terms.items()}) for g in elim]
    return Ideal(a.ring, gens)


def _colon_element(a: Ideal, g: Polynomial) -> Ideal:
    if g in a:
        return unit_ideal(a.ring)
    amb = a.ambient
    principal = Ideal(amb, [g])
    lifted = Ideal(amb, a.gb)
    meet = intersect(lifted, principal)
    return Ideal(a.ring, [h.divide_exact(g) for h in meet.gb])


def colon(a: Ideal, b: Ideal) -> Ideal:
    """(a : b) = { r : r*b ⊆ a }.  Rejects b = 0 rather than returning R."""
    _check(a, b)
    if b.is_zero():
        raise ValueError("colon by the zero ideal (the answer would be the whole ring)")
    result = None
    for g in b.essential_gens:
        part = _colon_element(a, g)
        result = part if result is None else intersect(result, part)
    return result


def colon_element(a: Ideal, g) -> Ideal:
    """(a : g) for a single element; whole ring when g ∈ a (including g = 0)."""
    g = a.ambient(g)
    if g in a:
        return unit_ideal(a.ring)
    return _colon_element(a, g)


def radical_member(r, a: Ideal) -> bool:
    """r ∈ √a, decided by 1 ∈ a + (1 - t*r)."""
    amb = a.ambient
    r = amb(r)
    if not r:
        return True
    big = amb.extend(["_t"])
    lift = list(range(1, big.n))
    gens = [g.change_ring(big, lift) for g in a.gb]
    gens.append(1 - big.var(0) * r.change_ring(big, lift))
    gb = reduced_groebner(gens, big)
    return bool(gb) and gb[0].is_constant()


def _dim_from_gb(ring: PolyRing, gb) -> int:
    if gb and gb[0].is_constant():
        return -1
    lms = [g.lm for g in gb]
    supports = [frozenset(i for i, a in enumerate(m) if a) for m in lms]
    for size in range(ring.n, -1, -1):
        for u in combinations(range(ring.n), size):
            us = frozenset(u)
            if not any(s <= us for s in supports):
                return size
    return -1


def dimension(b: Ideal) -> int:
    """Krull dimension of ring/b; -1 for the unit ideal."""
    return _dim_from_gb(b.ambient, list(b.gb))


def _need_equidimensional(ring):
    if not ring.equidimensional_assumed:
        raise Refusal(
            "height and R° tests compare dimensions, which needs an equidimensional "
            "ring; construct the QuotientRing with equidimensional_assumed=True")


def has_positive_height(b: Ideal) -> bool:
    """b is the whole ring, or lies in no minimal prime (dimension drops)."""
    _need_equidimensional(b.ring)
    if b.is_unit():
        return True
    return dimension(b) < b.ring.dim


def in_R_circ(c, ring) -> bool:
    """c avoids every minimal prime of the (equidimensional) ring."""
    _need_equidimensional(ring)
    return has_positive_height(Ideal(ring, [ring.ambient(c)]))


def is_regular_sequence(elems, ring) -> bool:
    elems = [ring.ambient(a) for a in elems]
    for a in elems:
        if a.terms.get((0,) * ring.ambient.n):
            raise ValueError(f"{a} has a constant term; expected positive-degree elements")
    return _regular(elems, ring)


def _regular(elems, ring) -> bool:
    prev = zero_ideal(ring)
    for a in elems:
        if a in prev:
            return False
        if colon_element(prev, a) != prev:
            return False
        prev = prev + Ideal(ring, [a])
    return not prev.is_unit()


def frobenius_power(a: Ideal, e: int) -> Ideal:
    """a^[p^e], generated by the p^e-th powers of the generators."""
    if e < 0:
        raise ValueError("negative Frobenius exponent")
    if e == 0:
        return a
    return Ideal(a.ring, [g.frobenius(e) for g in a.gens])


def _jacobian_reduced(b: Ideal) -> bool:
    """Sufficient test that the lift of b is radical.

    Generators forming a regular sequence make S/b Cohen-Macaulay, hence
    unmixed; if the maximal minors of their Jacobian lower the dimension,
    S/b is regular at every minimal prime (F_p is perfect), so it is reduced.
    """
    amb = b.ambient
    gens = [g for g in dict.fromkeys(b.gens) if g]
    c = len(gens)
    if c == 0 or c > amb.n or c > 3:
        return False
    if Ideal(amb, gens).gb != b.gb:
        return False
    if not _regular(gens, amb):
        return False
    jac = [[g.diff(i) for i in range(amb.n)] for g in gens]
    minors = [_det([[row[k] for k in cols] for row in jac])
              for cols in combinations(range(amb.n), c)]
    d = _dim_from_gb(amb, list(b.gb))
    return _dim_from_gb(amb, reduced_groebner(list(b.gb) + minors, amb)) < d


def _det(m):
    if len(m) == 1:
        return m[0][0]
    out = m[0][0].ring.zero()
    for j, a in enumerate(m[0]):
        if a:
            minor = [row[:j] + row[j + 1:] for row in m[1:]]
            term = a * _det(minor)
            out = out + term if j % 2 == 0 else out - term
    return out


def frobenius_preimage(b: Ideal, e: int = 1) -> Ideal:
    """{ r : r^(p^e) ∈ b }, computed on the lift."""
    if e < 1:
        raise ValueError("frobenius_preimage needs e >= 1")
    if b.is_unit():
        return b
    if not b.ring.defining_gens and _jacobian_reduced(b):
        return b
    return Ideal(b.ring, frobenius_preimage_gens(list(b.gb), e, b.ambient))


def is_radical(b: Ideal) -> bool:
    """In characteristic p an ideal is radical iff it is closed under p-th roots."""
    return b.is_unit() or frobenius_preimage(b, 1) == b


def frobenius_closure_chain(a: Ideal, bound: int) -> list[Ideal]:
    """[J_0 .. J_bound], J_e = { r : r^(p^e) ∈ a^[p^e] }."""
    if bound < 1:
        raise ValueError("frobenius_closure needs bound >= 1")
    chain = [a]
    for e in range(1, bound + 1):
        j = frobenius_preimage(frobenius_power(a, e), e)
        if not chain[-1].issubset(j):
            raise AssertionError("Frobenius closure chain failed to ascend")
        chain.append(j)
    return chain


def frobenius_closure(a: Ideal, bound: int = 3) -> tuple[Ideal, bool]:
    """Bounded a^F: (J_bound, J_{bound-1} == J_bound)."""
    if a.is_unit():
        return a, True
    chain = frobenius_closure_chain(a, bound)
    return chain[-1], chain[-1] == chain[-2]


def is_homogeneous_ideal(b: Ideal) -> bool:
    return all(g.is_homogeneous() for g in b.gb)


def is_reduced_ring(ring) -> bool:
    return not ring.defining_gens or is_radical(zero_ideal(ring))


def frobenius_limit_annihilator(b: Ideal, r) -> Ideal | None:
    """∪_n ∩_{q ≥ p^n} (b^[q] : r^q) by a degree count, when one applies.

    On a reduced graded ring with b and r homogeneous and deg r below every
    generator degree of b, c r^q ∈ b^[q] for all large q forces c r = 0, so
    the answer is (0 : r) for every n.  Returns None when the count does not
    apply.
    """
    ring = b.ring
    r = ring.ambient(r)
    if ring.defining_gens:
        r = ring.reduce(r)
    if not r or r in b or not r.is_homogeneous():
        return None
    gens = [g for g in b.gens if (ring.reduce(g) if ring.defining_gens else g)]
    if not gens or not all(g.is_homogeneous() for g in gens):
        return None
    if not all(g.is_homogeneous() for g in ring.defining_gens):
        return None
    if r.degree() >= min(g.degree() for g in gens):
        return None
    if not is_reduced_ring(ring):
        return None
    return colon_element(zero_ideal(ring), r)
