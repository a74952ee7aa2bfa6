"""Top local cohomology through Čech classes [r/a^j], a = a_1...a_d.

On a Cohen-Macaulay ring with a system of parameters a_1..a_d the class
[r/a^j] vanishes exactly when r ∈ (a_1^j, ..., a_d^j), and x acts by
[r/a^j] -> [r^p/a^{jp}].  Tight closure of parameter ideals is read off
the graded annihilator of a class.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .ideal import (
    Ideal,
    Refusal,
    colon_element,
    frobenius_closure,
    frobenius_limit_annihilator,
    frobenius_power,
    has_positive_height,
    in_R_circ,
    is_radical,
    is_regular_sequence,
    unit_ideal,
)
from .poly import Polynomial
from .skew import (
    GradedIdealChain,
    chain_from_colons,
    principal_chain,
    unit_chain,
    validate_chain,
)

DEFAULT_CHAIN_BOUND = 4
DEFAULT_CLOSURE_BOUND = 3


@dataclass(frozen=True)
class SopData:
    ring: object
    params: tuple
    verified: bool

    @classmethod
    def of(cls, ring, params) -> "SopData":
        if isinstance(params, str):
            params = ring.parse_list(params)
        params = tuple(ring.ambient(a) for a in params)
        d = ring.dim
        if len(params) != d:
            raise ValueError(f"a system of parameters for this ring has {d} elements, got {len(params)}")
        return cls(ring, params, is_regular_sequence(params, ring))

    @property
    def d(self) -> int:
        return len(self.params)

    @property
    def product(self) -> Polynomial:
        out = self.ring.ambient.one()
        for a in self.params:
            out = out * a
        return out

    def power_ideal(self, j: int) -> Ideal:
        """(a_1^j, ..., a_d^j); the unit ideal when j = 0."""
        if j == 0:
            return unit_ideal(self.ring)
        return Ideal(self.ring, [a ** j for a in self.params])

    def parameter_ideal(self) -> Ideal:
        return self.power_ideal(1)


def _require(s: SopData):
    if not s.verified:
        raise Refusal("parameters are not a verified regular sequence; the Čech zero test needs it")


@dataclass(frozen=True)
class CechClass:
    """[r/a^j]; use ``CechClass.make`` to normalise against a SopData."""

    r: Polynomial
    j: int

    @classmethod
    def make(cls, s: SopData, r, j: int) -> "CechClass":
        if j < 0:
            raise ValueError("exponent must be non-negative")
        r = s.ring.ambient(r)
        r = s.power_ideal(j).reduce(r)
        if not r:
            return cls(s.ring.ambient.zero(), 0)
        return cls(r, j)

    def __str__(self):
        return f"[{self.r}/a^{self.j}]"


def cech_is_zero(s: SopData, c: CechClass) -> bool:
    _require(s)
    return c.r in s.power_ideal(c.j)


def cech_equal(s: SopData, c1: CechClass, c2: CechClass) -> bool:
    _require(s)
    k = max(c1.j, c2.j)
    a = s.product
    diff = a ** (k - c1.j) * c1.r - a ** (k - c2.j) * c2.r
    return cech_is_zero(s, CechClass(diff, k))


def cech_x(c: CechClass) -> CechClass:
    p = c.r.ring.p
    return CechClass(c.r.frobenius(1), c.j * p)


def cech_smul(s: SopData, u, c: CechClass) -> CechClass:
    return CechClass.make(s, s.ring.ambient(u) * c.r, c.j)


def cech_is_torsion(s: SopData, c: CechClass, bound: int = DEFAULT_CLOSURE_BOUND) -> bool:
    """x^m[r/a^j] = 0 for some m <= bound, i.e. r in the bounded Frobenius
    closure of (a_1^j..a_d^j).  True is a certificate; False means not
    torsion within the bound."""
    _require(s)
    if cech_is_zero(s, c):
        return True
    closure, _ = frobenius_closure(s.power_ideal(c.j), bound)
    return c.r in closure


def cech_grann(s: SopData, c: CechClass, bound: int = DEFAULT_CHAIN_BOUND) -> GradedIdealChain:
    """b_n = ∩_{m=n..bound} ((a_i^{j p^m}) : r^{p^m})."""
    _require(s)
    if cech_is_zero(s, c):
        return unit_chain(s.ring)
    qj = s.power_ideal(c.j)
    exact = frobenius_limit_annihilator(qj, c.r)
    if exact is not None:
        return principal_chain(exact)
    anns = [colon_element(frobenius_power(qj, m), c.r.frobenius(m)) for m in range(bound + 1)]
    chain = chain_from_colons(anns)
    if not validate_chain(chain):
        raise AssertionError("graded annihilator chain failed to ascend")
    return chain


def _chain_json(chain: GradedIdealChain) -> list:
    return [str(e) for e in chain.trimmed().entries]


def tc_param_membership(s: SopData, r, j: int = 1, mode="chain",
                        bound: int = DEFAULT_CHAIN_BOUND) -> dict:
    """Is r in the tight closure of (a_1^j..a_d^j)?

    ``mode`` is "chain" or ("test", c, w0).  Chain mode reads the answer off
    the limit of the graded annihilator of [r/a^j]: member iff it has
    positive height.  Test mode checks c r^{p^n} ∈ (a_i^j)^[p^n] for
    n = w0..bound.
    """
    _require(s)
    ring = s.ring
    r = ring.ambient(r)
    qj = s.power_ideal(j)
    report = {"member": None, "chain": None, "limit": None,
              "positive_height": None, "stabilized": None, "warnings": []}
    if mode == "chain":
        c = CechClass.make(s, r, j)
        chain = cech_grann(s, c, bound)
        lim = chain.limit()
        ph = has_positive_height(lim)
        report.update(chain=_chain_json(chain), limit=str(lim), positive_height=ph,
                      stabilized=chain.certified)
        if r in qj:
            report["member"] = True
        elif chain.certified:
            report["member"] = ph
        else:
            report["member"] = "unknown-at-bound"
        return report
    if isinstance(mode, tuple) and mode and mode[0] == "test":
        _, cel, w0 = mode
        cel = ring.ambient(cel)
        if not cel or (ring.defining_gens and not ring.reduce(cel)):
            raise ValueError("test element must be nonzero")
        try:
            if not in_R_circ(cel, ring):
                report["warnings"].append(f"{cel} is not in R°")
        except Refusal as exc:
            report["warnings"].append(str(exc))
        ok = all(cel * r.frobenius(n) in frobenius_power(qj, n) for n in range(w0, bound + 1))
        report.update(member=ok, stabilized=False)
        return report
    raise ValueError(f"unknown mode {mode!r}")


@dataclass(frozen=True)
class EnescuReport:
    q: Ideal
    b: Polynomial
    chain: GradedIdealChain
    qb: Ideal
    positive_height: bool

    def to_json(self) -> dict:
        return {"b": str(self.b), "chain": _chain_json(self.chain), "qb": str(self.qb),
                "positive_height": self.positive_height, "certified": self.chain.certified}


@dataclass
class ZqrReport:
    q: Ideal
    reports: list
    skipped: list
    maximal: list
    radical: list
    f_injective_probe: bool
    notes: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "q": str(self.q),
            "samples": [r.to_json() for r in self.reports],
            "skipped": [str(b) for b in self.skipped],
            "maximal": [str(b) for b in self.maximal],
            "radical": self.radical,
            "f_injective_probe": self.f_injective_probe,
            "notes": list(self.notes),
        }


def enescu_zqr(s: SopData, samples, bound: int = DEFAULT_CHAIN_BOUND) -> ZqrReport:
    """q(b) for each sample b outside q = (a_1..a_d), and the maximal ones."""
    _require(s)
    samples = [s.ring.ambient(b) for b in (s.ring.parse_list(samples) if isinstance(samples, str) else samples)]
    if not samples:
        raise ValueError("no samples given")
    q = s.parameter_ideal()
    reports, skipped, notes = [], [], []
    torsion_free = True
    for b in samples:
        if b in q:
            skipped.append(b)
            notes.append(f"{b} lies in q, so q(b) is the whole ring")
            continue
        c = CechClass.make(s, b, 1)
        if cech_is_torsion(s, c):
            torsion_free = False
        chain = cech_grann(s, c, bound)
        lim = chain.limit()
        reports.append(EnescuReport(q, b, chain, lim, has_positive_height(lim)))
    found = []
    for rep in reports:
        if rep.qb not in found:
            found.append(rep.qb)
    maximal = [b for b in found if not any(b.issubset(c) and b != c for c in found)]
    maximal.sort(key=str)
    return ZqrReport(q, reports, skipped, maximal, [is_radical(b) for b in maximal],
                     torsion_free, notes)
