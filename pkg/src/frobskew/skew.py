"""The Frobenius skew polynomial ring R[x,f] and its graded two-sided ideals.

Multiplication follows x*r = r^p*x.  Graded two-sided ideals are ascending
chains of ideals of R, stored as a finite list whose last entry repeats.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import reduce

from .ideal import Ideal, _same_ring, intersect, unit_ideal, zero_ideal
from .poly import RingMismatch


class SkewPoly:
    """sum r_i x^i with coefficients reduced modulo the ring's defining ideal."""

    def __init__(self, ring, terms):
        self.ring = ring
        reduce_ = getattr(ring, "reduce", None)
        clean = {}
        for deg, r in dict(terms).items():
            if deg < 0:
                raise ValueError("negative x-degree")
            r = ring.ambient(r)
            if reduce_ is not None:
                r = reduce_(r)
            if r:
                clean[deg] = r
        self.terms = dict(sorted(clean.items()))

    @classmethod
    def x(cls, ring, n: int = 1) -> "SkewPoly":
        return cls(ring, {n: ring.ambient.one()})

    @classmethod
    def const(cls, ring, r) -> "SkewPoly":
        return cls(ring, {0: r})

    def __eq__(self, other):
        return (isinstance(other, SkewPoly) and _same_ring(self.ring, other.ring)
                and self.terms == other.terms)

    def __hash__(self):
        return hash(tuple(self.terms.items()))

    def __add__(self, other: "SkewPoly") -> "SkewPoly":
        _check(self, other)
        out = dict(self.terms)
        for d, r in other.terms.items():
            out[d] = out[d] + r if d in out else r
        return SkewPoly(self.ring, out)

    def __mul__(self, other: "SkewPoly") -> "SkewPoly":
        _check(self, other)
        out: dict = {}
        for n, r in self.terms.items():
            for m, s in other.terms.items():
                term = r * s.frobenius(n)
                out[n + m] = out[n + m] + term if n + m in out else term
        return SkewPoly(self.ring, out)

    def degree(self) -> int:
        return max(self.terms, default=-1)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for d, r in self.terms.items():
            xs = "" if d == 0 else ("x" if d == 1 else f"x^{d}")
            parts.append(f"({r})" + (f"*{xs}" if xs else ""))
        return " + ".join(parts)

    __repr__ = __str__


def _check(u, v):
    if not _same_ring(u.ring, v.ring):
        raise RingMismatch("skew polynomials over different rings")


def skew_mul(u: SkewPoly, v: SkewPoly) -> SkewPoly:
    return u * v


@dataclass(frozen=True)
class GradedIdealChain:
    """b_0 ⊆ b_1 ⊆ ... with b_n = entries[-1] for n past the list.

    ``certified`` is False when the tail was observed rather than proven.
    """

    entries: tuple
    certified: bool = True

    def __post_init__(self):
        if not self.entries:
            raise ValueError("a chain needs at least one entry")
        object.__setattr__(self, "entries", tuple(self.entries))

    @property
    def ring(self):
        return self.entries[0].ring

    @property
    def stable_from(self) -> int:
        k = len(self.entries) - 1
        while k > 0 and self.entries[k - 1] == self.entries[k]:
            k -= 1
        return k

    def __getitem__(self, n: int) -> Ideal:
        if n < 0:
            raise IndexError(n)
        return self.entries[min(n, len(self.entries) - 1)]

    def limit(self) -> Ideal:
        return self.entries[-1]

    def trimmed(self) -> "GradedIdealChain":
        return GradedIdealChain(self.entries[: self.stable_from + 1], self.certified)

    def __str__(self):
        return format_chain(self)


def validate_chain(c: GradedIdealChain) -> bool:
    """Ascending entries are exactly the graded two-sided ideals."""
    return all(a.issubset(b) for a, b in zip(c.entries, c.entries[1:]))


def principal_chain(b: Ideal) -> GradedIdealChain:
    """bR[x,f] = ⊕ b x^n."""
    return GradedIdealChain((b,), True)


def unit_chain(ring) -> GradedIdealChain:
    return principal_chain(unit_ideal(ring))


def zero_chain(ring) -> GradedIdealChain:
    return principal_chain(zero_ideal(ring))


def chain_from_colons(anns) -> GradedIdealChain:
    """b_n = ∩_{m=n..N} anns[m] for a bounded sweep of annihilators.

    The suffix intersections are constant whenever the annihilators descend,
    so that alone proves nothing.  The chain is marked certified when the
    last annihilator is the unit ideal, which is exact: once x^m g = 0 every
    later x^m' g vanishes too, so the tail past the sweep is the unit ideal.
    It is also marked certified when at least two annihilators were computed
    and all agree; that is the usual constant-from-the-start convention and
    only as good as the sweep length.
    """
    anns = list(anns)
    entries = [None] * len(anns)
    acc = None
    for m in range(len(anns) - 1, -1, -1):
        acc = anns[m] if acc is None else intersect(acc, anns[m])
        entries[m] = acc
    constant = len(anns) > 1 and all(a == anns[0] for a in anns)
    certified = constant or anns[-1].is_unit()
    return GradedIdealChain(tuple(entries), certified)


def limit_ideal(c: GradedIdealChain) -> tuple[Ideal, bool]:
    """The ultimate constant value, with the chain's certified flag."""
    return c[c.stable_from], c.certified


def intersect_chains(c1: GradedIdealChain, c2: GradedIdealChain) -> GradedIdealChain:
    n = max(len(c1.entries), len(c2.entries))
    return GradedIdealChain(tuple(intersect(c1[i], c2[i]) for i in range(n)),
                            c1.certified and c2.certified)


def intersect_all(chains, ring) -> GradedIdealChain:
    chains = list(chains)
    if not chains:
        return unit_chain(ring)
    return reduce(intersect_chains, chains)


def skew_in_chain(u: SkewPoly, c: GradedIdealChain) -> bool:
    """Membership of a skew polynomial in ⊕ b_n x^n."""
    return all(r in c[n] for n, r in u.terms.items())


def format_chain(c: GradedIdealChain) -> str:
    parts = ["[" + ", ".join(map(str, e.display_gens)) + "]" if not e.is_zero() else "[0]"
             for e in c.trimmed().entries]
    return "chain: " + "; ".join(parts) + "; stable"


def parse_chain(ring, text: str) -> GradedIdealChain:
    """``chain: [x^2]; [x]; stable`` -- the last listed ideal repeats forever."""
    body = re.sub(r"^\s*chain\s*:", "", text).strip()
    parts = [t.strip() for t in body.split(";") if t.strip()]
    if not parts or parts[-1] != "stable":
        raise ValueError("chain text must end with 'stable'")
    entries = []
    for part in parts[:-1]:
        m = re.fullmatch(r"\[(.*)\]", part)
        if not m:
            raise ValueError(f"expected a bracketed ideal, got {part!r}")
        entries.append(Ideal(ring, m.group(1)))
    return GradedIdealChain(tuple(entries), True)

