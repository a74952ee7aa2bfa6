"""Radical ideals carried as antichains of caller-asserted prime components."""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import reduce

from .ideal import Ideal, _same_ring, intersect, is_radical, unit_ideal
from .poly import RingMismatch


@dataclass(frozen=True)
class RadicalDecomposition:
    """Intersection of prime components; the empty tuple is the whole ring.

    Primality is taken on trust.  Construction still runs the p-th-root
    probe on every component and rejects non-minimal component lists.
    """

    ring: object
    components: tuple

    def __post_init__(self):
        comps = tuple(sorted(set(self.components), key=str))
        object.__setattr__(self, "components", comps)
        for c in comps:
            if not _same_ring(c.ring, self.ring):
                raise RingMismatch(f"component {c} lives in a different ring")
            if c.is_unit():
                raise ValueError("the unit ideal is not a prime component")
        for i, a in enumerate(comps):
            for b in comps[i + 1:]:
                if a.issubset(b) or b.issubset(a):
                    raise ValueError(f"components {a} and {b} are nested; not a minimal decomposition")

    @classmethod
    def of(cls, ring, components, probe: bool = True) -> "RadicalDecomposition":
        comps = [c if isinstance(c, Ideal) else Ideal(ring, c) for c in components]
        if probe:
            for c in comps:
                if not is_radical(c):
                    raise ValueError(f"{c} fails the radical probe, so it cannot be prime")
        return cls(ring, tuple(comps))

    @classmethod
    def parse(cls, ring, text: str) -> "RadicalDecomposition":
        """``primes: (s); (t)``; the prefix is optional, ``primes:`` alone is R."""
        text = re.sub(r"^\s*primes\s*:", "", text).strip()
        parts = [t.strip() for t in text.split(";") if t.strip()]
        comps = []
        for part in parts:
            m = re.fullmatch(r"\((.*)\)", part)
            if not m:
                raise ValueError(f"expected a parenthesised ideal, got {part!r}")
            comps.append(Ideal(ring, m.group(1)))
        return cls.of(ring, comps)

    def __len__(self):
        return len(self.components)

    def __str__(self):
        return "primes: " + "; ".join(str(c) for c in self.components)


def expand(d: RadicalDecomposition) -> Ideal:
    if not d.components:
        return unit_ideal(d.ring)
    return reduce(intersect, d.components)


def _check(a, b):
    if not _same_ring(a.ring, b.ring):
        raise RingMismatch(f"{a.ring!r} vs {b.ring!r}")


def _minimal(comps):
    out = []
    for c in comps:
        if any(o.issubset(c) and o != c for o in comps):
            continue
        if c not in out:
            out.append(c)
    return out


def intersect_rd(a: RadicalDecomposition, b: RadicalDecomposition) -> RadicalDecomposition:
    """a ∩ b: keep the minimal members of the pooled components."""
    _check(a, b)
    return RadicalDecomposition(a.ring, tuple(_minimal(list(a.components) + list(b.components))))


def colon_rd(b: RadicalDecomposition, a: RadicalDecomposition) -> RadicalDecomposition:
    """(b : a): the components of b that do not contain a."""
    _check(a, b)
    whole = expand(a)
    return RadicalDecomposition(b.ring, tuple(q for q in b.components if not whole.issubset(q)))
