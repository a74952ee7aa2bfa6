"""Left R[x,f]-modules, graded annihilators and special ideals.

Three presentations are supported:

* ``FiniteModule`` -- an F_p-vector space with matrices for each variable of
  R and for x.  Everything is decided by enumeration, so results certify.
* ``FiniteCyclicsModule`` -- ⊕ R/J_i with x acting p-semilinearly through a
  matrix of polynomials.  When every R/J_i is finite it converts to a
  ``FiniteModule``; with x = Frobenius on radical J_i the annihilator
  calculus is exact in closed form; otherwise computations are bounded.
* ``CyclicTower`` -- ⊕_n R/b_n with x(r + b_n) = r^p + b_{n+1}, e.g. H(a).
  Only homogeneous elements are handled and all sweeps are bounded.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, reduce
from itertools import product
from typing import NamedTuple

from . import _fp
from .groebner import ResourceError
from .ideal import (
    Ideal,
    Refusal,
    colon,
    colon_element,
    dimension,
    frobenius_closure,
    frobenius_limit_annihilator,
    frobenius_power,
    frobenius_preimage,
    has_positive_height,
    intersect,
    is_radical,
    unit_ideal,
    zero_ideal,
)
from .poly import Polynomial
from .radical import RadicalDecomposition, colon_rd, expand
from .skew import (
    GradedIdealChain,
    chain_from_colons,
    intersect_all,
    limit_ideal,
    principal_chain,
    validate_chain,
)

DEFAULT_BOUND = 8


# -- submodules ---------------------------------------------------------------

class Submodule:
    """A submodule known by its elements, by R-module generators, or by a test.

    ``exact`` is False when membership was decided inside a finite bound only.
    """

    def __init__(self, module, elements=None, generators=None, test=None,
                 exact=True, label=""):
        self.module = module
        self.elements = frozenset(elements) if elements is not None else None
        self.generators = list(generators) if generators is not None else None
        if self.generators is None and self.elements is not None:
            self.generators = module.spanning_set(self.elements)
        self._test = test
        self.exact = exact
        self.label = label

    def __contains__(self, h) -> bool:
        h = self.module.canon(h)
        if self.elements is not None:
            return h in self.elements
        if self._test is not None:
            return self._test(h)
        raise Refusal("submodule has no membership test")

    def issubset(self, other: "Submodule") -> bool:
        if self.elements is not None and other.elements is not None:
            return self.elements <= other.elements
        if self.generators is None:
            raise Refusal("cannot compare submodules without generators")
        return all(g in other for g in self.generators)

    def __le__(self, other):
        return self.issubset(other)

    def __eq__(self, other):
        if not isinstance(other, Submodule):
            return NotImplemented
        return self.issubset(other) and other.issubset(self)

    def __hash__(self):
        return hash(self.elements) if self.elements is not None else id(self)

    def is_zero(self) -> bool:
        if self.elements is not None:
            return len(self.elements) == 1
        if self.generators is not None:
            return all(self.module.is_zero(g) for g in self.generators)
        raise Refusal("cannot decide whether the submodule is zero")

    def __len__(self):
        if self.elements is None:
            raise TypeError("submodule is not enumerated")
        return len(self.elements)

    def describe(self) -> str:
        if self.label:
            return self.label
        gens = self.generators or []
        return "<" + ", ".join(self.module.format(g) for g in gens) + ">"


# -- the finite backend --------------------------------------------------------

def _apply(mat, v, p):
    return tuple(sum(a * b for a, b in zip(row, v)) % p for row in mat)


class FiniteModule:
    """An R[x,f]-module that is finite-dimensional over F_p.

    ``var_mats[k]`` is the matrix of multiplication by the k-th ambient
    variable, ``x_mat`` the (F_p-linear) action of x, and ``base`` an ideal
    of R with R/base finite that annihilates the module.
    """

    def __init__(self, ring, dim: int, var_mats, x_mat, base: Ideal, label: str = ""):
        self.ring = ring
        self.p = ring.ambient.p
        self.dim = dim
        self.var_mats = [tuple(tuple(r) for r in m) for m in var_mats]
        self.x_mat = tuple(tuple(r) for r in x_mat)
        self.base = base
        self.label = label
        if dimension(base) > 0:
            raise ValueError("base annihilator must have finite colength")

    def zero(self):
        return (0,) * self.dim

    def canon(self, v):
        return tuple(int(a) % self.p for a in v)

    def is_zero(self, v) -> bool:
        return not any(v)

    def add(self, u, v):
        return tuple((a + b) % self.p for a, b in zip(u, v))

    def scale(self, a: int, v):
        return tuple(a * b % self.p for b in v)

    def x(self, v):
        return _apply(self.x_mat, v, self.p)

    def smul(self, c, v):
        """c . v for a polynomial c."""
        c = self.ring.ambient(c)
        cache = {(0,) * self.ring.ambient.n: tuple(v)}

        def mono(e):
            if e in cache:
                return cache[e]
            k = next(i for i, a in enumerate(e) if a)
            prev = list(e)
            prev[k] -= 1
            out = _apply(self.var_mats[k], mono(tuple(prev)), self.p)
            cache[e] = out
            return out

        acc = self.zero()
        for e, coef in c.terms.items():
            acc = self.add(acc, self.scale(coef, mono(e)))
        return acc

    def elements(self):
        return [tuple(v) for v in product(range(self.p), repeat=self.dim)]

    def __len__(self):
        return self.p ** self.dim

    def format(self, v) -> str:
        return "(" + ",".join(map(str, v)) + ")"

    @cached_property
    def _base_monomials(self):
        return standard_monomials(self.base)

    def ann(self, v) -> Ideal:
        """(0 :_R v) as an ideal of R (contains ``base``)."""
        amb = self.ring.ambient
        monos = self._base_monomials
        cols = [self.smul(amb.monomial(m), v) for m in monos]
        kern = _fp.kernel(cols, self.p)
        extra = [Polynomial(amb, {m: a for m, a in zip(monos, vec) if a}) for vec in kern]
        return Ideal(self.ring, list(self.base.gb) + extra)

    def spanning_set(self, elements):
        basis, _ = _fp.rref(list(elements), self.p)
        return [tuple(b) for b in basis]

    def span(self, gens) -> Submodule:
        """The R[x,f]-submodule generated by ``gens``."""
        basis, piv = _fp.rref([self.canon(g) for g in gens], self.p)
        todo = list(basis)
        while todo:
            v = todo.pop()
            for img in [self.x(v)] + [_apply(m, v, self.p) for m in self.var_mats]:
                if not _fp.in_span(img, basis, piv, self.p):
                    basis, piv = _fp.rref(basis + [img], self.p)
                    todo.append(img)
        return Submodule(self, _fp.span_elements(basis, self.p, self.dim), basis)

    def quotient(self, sub: Submodule):
        """(M/N, projection); N must be an R[x,f]-submodule."""
        basis, piv = _fp.rref(list(sub.generators or []), self.p)
        keep = [i for i in range(self.dim) if i not in piv]

        def proj(v):
            w = _fp.reduce_vec(self.canon(v), basis, piv, self.p)
            return tuple(w[i] for i in keep)

        def unit(i):
            e = [0] * self.dim
            e[i] = 1
            return tuple(e)

        def induced(mat):
            cols = [proj(_apply(mat, unit(i), self.p)) for i in keep]
            return [[cols[j][i] for j in range(len(keep))] for i in range(len(keep))]

        q = FiniteModule(self.ring, len(keep), [induced(m) for m in self.var_mats],
                         induced(self.x_mat), self.base, label=f"{self.label}/N")
        return q, proj


def standard_monomials(b: Ideal) -> list:
    """Monomials outside the leading-term ideal of b (b of finite colength)."""
    lms = [g.lm for g in b.gb]
    n = b.ambient.n
    if any(not any(m) for m in lms):
        return []
    out, frontier, seen = [], [(0,) * n], set()
    while frontier:
        m = frontier.pop()
        if m in seen:
            continue
        seen.add(m)
        if any(all(a >= c for a, c in zip(m, lm)) for lm in lms):
            continue
        out.append(m)
        if len(out) > 100_000:
            raise ResourceError("quotient is too large to enumerate")
        for i in range(n):
            e = list(m)
            e[i] += 1
            frontier.append(tuple(e))
    return sorted(out, key=b.ambient.key)


# -- direct sums of cyclic modules ----------------------------------------------

class FiniteCyclicsModule:
    """⊕ R/J_i with X(sum r_j e_j) = sum_j r_j^p sum_i u_ij e_i.

    Elements are tuples of ambient polynomials in normal form mod J_i.
    """

    def __init__(self, ring, summands, x_matrix=None, check: bool = True, label: str = ""):
        self.ring = ring
        self.summands = tuple(s if isinstance(s, Ideal) else Ideal(ring, s) for s in summands)
        k = len(self.summands)
        amb = ring.ambient
        if x_matrix is None:
            x_matrix = [[amb.one() if i == j else amb.zero() for j in range(k)] for i in range(k)]
        self.x_matrix = tuple(tuple(amb(u) for u in row) for row in x_matrix)
        if len(self.x_matrix) != k or any(len(row) != k for row in self.x_matrix):
            raise ValueError("x_matrix must be k x k")
        self.label = label
        if check and not self.is_well_defined():
            raise ValueError("x_matrix is not compatible with the summands: u_ij J_j^[p] ⊄ J_i")

    @classmethod
    def frobenius(cls, ring, summands, label: str = "") -> "FiniteCyclicsModule":
        return cls(ring, summands, None, label=label)

    @property
    def k(self) -> int:
        return len(self.summands)

    def is_well_defined(self) -> bool:
        for i, row in enumerate(self.x_matrix):
            for j, u in enumerate(row):
                if u and not all(u * g.frobenius(1) in self.summands[i]
                                 for g in self.summands[j].gb):
                    return False
        return True

    @cached_property
    def is_diagonal_frobenius(self) -> bool:
        amb = self.ring.ambient
        return all((u == amb.one()) if i == j else not u
                   for i, row in enumerate(self.x_matrix) for j, u in enumerate(row))

    @cached_property
    def radical_summands(self) -> bool:
        return all(is_radical(j) for j in self.summands)

    @cached_property
    def closed_form(self) -> bool:
        """x = Frobenius on radical summands: ann(x^m g) = ann(g) for all m."""
        return self.is_diagonal_frobenius and self.radical_summands

    def is_finite(self) -> bool:
        return all(dimension(j) <= 0 for j in self.summands)

    def canon(self, h):
        if isinstance(h, (Polynomial, str, int)):
            h = (h,)
        h = tuple(h)
        if len(h) != self.k:
            raise ValueError(f"element needs {self.k} components")
        amb = self.ring.ambient
        return tuple(j.reduce(amb(r)) for j, r in zip(self.summands, h))

    def element(self, *components):
        return self.canon(components)

    def zero(self):
        return tuple(self.ring.ambient.zero() for _ in self.summands)

    def is_zero(self, h) -> bool:
        return not any(self.canon(h))

    def add(self, u, v):
        return self.canon(tuple(a + b for a, b in zip(u, v)))

    def smul(self, c, h):
        c = self.ring.ambient(c)
        return self.canon(tuple(c * r for r in h))

    def x(self, h):
        amb = self.ring.ambient
        h = self.canon(h)
        out = [amb.zero() for _ in range(self.k)]
        for j, r in enumerate(h):
            if r:
                rp = r.frobenius(1)
                for i in range(self.k):
                    u = self.x_matrix[i][j]
                    if u:
                        out[i] = out[i] + u * rp
        return self.canon(out)

    def ann(self, h) -> Ideal:
        h = self.canon(h)
        parts = [colon_element(j, r) for j, r in zip(self.summands, h)]
        if not parts:
            return unit_ideal(self.ring)
        return reduce(intersect, parts)

    def format(self, h) -> str:
        h = self.canon(h)
        if self.k == 1:
            return str(h[0])
        return "(" + ", ".join(map(str, h)) + ")"

    def parse_element(self, text: str):
        text = text.strip()
        if text.startswith("(") and text.endswith(")") and self.k > 1:
            text = text[1:-1]
        parts = self.ring.parse_list(text)
        return self.canon(parts)

    def spanning_set(self, elements):
        return [e for e in elements if not self.is_zero(e)]

    # finite conversion
    @cached_property
    def _finite(self):
        if not self.is_finite():
            raise Refusal("module is not finite-dimensional over F_p")
        amb = self.ring.ambient
        p = amb.p
        monos = [standard_monomials(j) for j in self.summands]
        index = {}
        for i, ms in enumerate(monos):
            for m in ms:
                index[(i, m)] = len(index)
        dim = len(index)

        def enc(h):
            v = [0] * dim
            for i, r in enumerate(self.canon(h)):
                for m, c in r.terms.items():
                    v[index[(i, m)]] = c
            return tuple(v)

        basis = list(index)

        def dec(v):
            comps = [dict() for _ in range(self.k)]
            for (i, m), a in zip(basis, v):
                if a % p:
                    comps[i][m] = a % p
            return tuple(Polynomial(amb, c) for c in comps)

        def column_matrix(fn):
            cols = []
            for i, m in basis:
                e = [amb.zero()] * self.k
                e[i] = amb.monomial(m)
                cols.append(enc(fn(tuple(e))))
            return [[cols[c][r] for c in range(dim)] for r in range(dim)]

        var_mats = [column_matrix(lambda h, v=v: self.smul(v, h)) for v in amb.gens()]
        x_mat = column_matrix(self.x)
        base = reduce(intersect, self.summands) if self.summands else unit_ideal(self.ring)
        fm = FiniteModule(self.ring, dim, var_mats, x_mat, base, label=self.label)
        return fm, enc, dec

    def finite(self) -> FiniteModule:
        return self._finite[0]

    def encode(self, h):
        return self._finite[1](h)

    def decode(self, v):
        return self._finite[2](v)

    def elements(self):
        fm, _, dec = self._finite
        return [dec(v) for v in fm.elements()]


# -- towers ----------------------------------------------------------------------

class TowerElement(NamedTuple):
    n: int
    r: Polynomial


class CyclicTower:
    """⊕_n R/b_n with x(r + b_n) = r^p + b_{n+1}, built lazily up to ``working_bound``."""

    def __init__(self, ring, chain_fn, working_bound: int = DEFAULT_BOUND, label: str = ""):
        self.ring = ring
        self._chain_fn = chain_fn
        self._cache = {}
        self.working_bound = working_bound
        self.label = label
        self.frobenius_tower = False

    @classmethod
    def H(cls, a: Ideal, working_bound: int = DEFAULT_BOUND) -> "CyclicTower":
        """H(a) = ⊕ R/a^[p^n]."""
        tower = cls(a.ring, lambda n: frobenius_power(a, n), working_bound, label=f"H{a}")
        tower.frobenius_tower = True
        return tower

    @classmethod
    def G(cls, a: Ideal, working_bound: int = DEFAULT_BOUND, closure_bound: int = 3) -> "CyclicTower":
        """G(a) = ⊕ R/(a^[p^n])^F, with each closure computed to ``closure_bound``."""
        def fn(n):
            return frobenius_closure(frobenius_power(a, n), closure_bound)[0]
        return cls(a.ring, fn, working_bound, label=f"G{a}")

    def b(self, n: int) -> Ideal:
        if n > self.working_bound:
            raise ResourceError(f"tower component {n} is past the working bound {self.working_bound}")
        if n not in self._cache:
            self._cache[n] = self._chain_fn(n)
        return self._cache[n]

    def canon(self, h) -> TowerElement:
        n, r = h
        return TowerElement(n, self.b(n).reduce(self.ring.ambient(r)))

    def element(self, n, r) -> TowerElement:
        return self.canon((n, r))

    def is_zero(self, h) -> bool:
        return not self.canon(h).r

    def add(self, u, v):
        if u.n != v.n:
            raise ValueError("only homogeneous elements of one degree can be added")
        return self.canon((u.n, u.r + v.r))

    def smul(self, c, h):
        return self.canon((h.n, self.ring.ambient(c) * h.r))

    def x(self, h):
        h = self.canon(h)
        return self.canon((h.n + 1, h.r.frobenius(1)))

    def ann(self, h) -> Ideal:
        h = self.canon(h)
        return colon_element(self.b(h.n), h.r)

    def format(self, h) -> str:
        return f"[{h.r}]_{h.n}"

    def spanning_set(self, elements):
        return [e for e in elements if not self.is_zero(e)]

    def is_well_defined(self, upto: int) -> bool:
        return all(frobenius_power(self.b(n), 1).issubset(self.b(n + 1)) for n in range(upto))

    def is_f_sequence(self, upto: int) -> bool:
        """b_n = f^{-1}(b_{n+1}) for n < upto: the x-torsion-free criterion."""
        return all(self.b(n) == frobenius_preimage(self.b(n + 1), 1) for n in range(upto))

    def is_torsion(self, h, bound: int = 3) -> bool:
        """r ∈ (b_n)^F within ``bound`` Frobenius steps (True is a certificate)."""
        h = self.canon(h)
        if not h.r:
            return True
        return h.r in frobenius_closure(self.b(h.n), bound)[0]


# -- operations --------------------------------------------------------------------

def _finite_view(M):
    """(FiniteModule, encode, decode) or None."""
    if isinstance(M, FiniteModule):
        return M, M.canon, M.canon
    if isinstance(M, FiniteCyclicsModule) and M.is_finite():
        return M._finite
    return None


def _lift_sub(M, sub: Submodule, dec) -> Submodule:
    if sub.module is M:
        return sub
    elems = frozenset(dec(v) for v in sub.elements)
    gens = [dec(v) for v in sub.generators]
    return Submodule(M, elems, gens, exact=sub.exact, label=sub.label)


def x_action(M, h):
    return M.x(h)


def orbit(M, g, bound: int):
    """x^m g for m = 0.. until a repeat, a zero, or ``bound`` steps.

    Returns (orbit, start of the cycle or None).
    """
    g = M.canon(g)
    seen = {g: 0}
    orb = [g]
    for _ in range(bound):
        h = M.canon(M.x(orb[-1]))
        if h in seen:
            return orb, seen[h]
        seen[h] = len(orb)
        orb.append(h)
    return orb, None


def _orbit_until_repeat(M: FiniteModule, g):
    orb, start = orbit(M, g, len(M) + 1)
    return orb, start


def gamma_x(M, bound: int = DEFAULT_BOUND) -> Submodule:
    """Γ_x(M) = { h : x^j h = 0 for some j }."""
    view = _finite_view(M)
    if view is not None:
        fm, _, dec = view
        tors = []
        for v in fm.elements():
            orb, _ = _orbit_until_repeat(fm, v)
            if any(fm.is_zero(w) for w in orb):
                tors.append(v)
        sub = Submodule(fm, tors, label="Γ_x")
        return _lift_sub(M, sub, dec)
    if isinstance(M, FiniteCyclicsModule):
        if M.closed_form:
            return Submodule(M, generators=[], test=M.is_zero, label="0")
        def test(h):
            orb, _ = orbit(M, h, bound)
            return any(M.is_zero(w) for w in orb)
        return Submodule(M, test=test, exact=False, label="Γ_x (bounded)")
    if isinstance(M, CyclicTower):
        return Submodule(M, test=lambda h: M.is_torsion(h, bound), exact=False,
                         label=f"Γ_x via Frobenius closure (bound {bound})")
    raise TypeError(f"unsupported module {type(M).__name__}")


def is_x_torsion_free(M, bound: int = DEFAULT_BOUND) -> bool:
    view = _finite_view(M)
    if view is not None:
        return gamma_x(view[0]).is_zero()
    if isinstance(M, FiniteCyclicsModule):
        return M.closed_form
    if isinstance(M, CyclicTower):
        return M.is_f_sequence(min(bound, M.working_bound) - 1)
    return False


def hsl_number(M) -> int:
    """Least e with x^e Γ_x(M) = 0 (finite backend)."""
    view = _finite_view(M)
    if view is None:
        raise Refusal("hsl_number needs a finite module")
    fm = view[0]
    tors = [v for v in gamma_x(fm).elements]
    e = 0
    while any(not fm.is_zero(v) for v in tors):
        tors = [fm.x(v) for v in tors]
        e += 1
    return e


def grann_element(M, g, bound: int = DEFAULT_BOUND) -> GradedIdealChain:
    """Graded annihilator of R[x,f]g as the chain b_n = ∩_{m ≥ n} ann(x^m g)."""
    view = _finite_view(M)
    if view is not None:
        fm, enc, _ = view
        orb, start = _orbit_until_repeat(fm, enc(g))
        anns = [fm.ann(h) for h in orb]
        return _chain_from_orbit(anns, start, len(orb))
    if isinstance(M, FiniteCyclicsModule) and M.closed_form:
        return principal_chain(M.ann(g))
    if isinstance(M, CyclicTower) and M.frobenius_tower:
        h = M.canon(g)
        exact = frobenius_limit_annihilator(M.b(h.n), h.r)
        if exact is not None:
            return principal_chain(exact)
    orb, start = orbit(M, g, bound)
    anns = [M.ann(h) for h in orb]
    if start is not None:
        return _chain_from_orbit(anns, start, len(orb))
    if M.is_zero(orb[-1]):
        return _chain_from_orbit(anns + [unit_ideal(M.ring)], len(orb), len(orb) + 1)
    return chain_from_colons(anns)


def _suffix_intersections(anns):
    out = [None] * len(anns)
    acc = None
    for m in range(len(anns) - 1, -1, -1):
        acc = anns[m] if acc is None else intersect(acc, anns[m])
        out[m] = acc
    return out


def _chain_from_orbit(anns, start, length):
    # the orbit is periodic from `start`, so ∩_{m ≥ n} only needs the listed terms
    suffix = _suffix_intersections(anns)
    entries = suffix[: (start if start is not None else length - 1) + 1]
    return GradedIdealChain(tuple(entries), certified=True)


def grann_submodule(M, gens, bound: int = DEFAULT_BOUND) -> GradedIdealChain:
    """Entrywise intersection of the generators' graded annihilators."""
    return intersect_all((grann_element(M, g, bound) for g in gens), M.ring)


def ann_of_chain(M, B: GradedIdealChain, bound: int = DEFAULT_BOUND) -> Submodule:
    """ann_M(⊕ b_n x^n) = { h : b_n x^n h = 0 for all n }."""
    view = _finite_view(M)
    if view is not None:
        fm, _, dec = view
        elems = [v for v in fm.elements() if _killed_finite(fm, B, v)]
        return _lift_sub(M, Submodule(fm, elems), dec)
    if isinstance(M, FiniteCyclicsModule) and M.closed_form:
        lim = B.limit()
        cols = [unit_ideal(M.ring) if lim.issubset(j) else colon(j, lim) for j in M.summands]
        gens = []
        for i, c in enumerate(cols):
            for g in c.essential_gens or c.gb:
                h = [M.ring.ambient.zero()] * M.k
                h[i] = g
                h = M.canon(h)
                if not M.is_zero(h):
                    gens.append(h)

        def test(h, lim=lim):
            return all(all(c * r in j for c in lim.gb) for j, r in zip(M.summands, M.canon(h)))
        return Submodule(M, generators=gens, test=test, exact=B.certified)
    if isinstance(M, CyclicTower):
        def test(h):
            h = M.canon(h)
            for m in range(M.working_bound - h.n + 1):
                rq = h.r.frobenius(m)
                if not all(c * rq in M.b(h.n + m) for c in B[m].gb):
                    return False
            return True
        return Submodule(M, test=test, exact=False)

    def test(h):
        orb, _ = orbit(M, h, bound)
        return all(M.is_zero(M.smul(c, w)) for n, w in enumerate(orb) for c in B[n].gb)
    return Submodule(M, test=test, exact=False)


def _killed_finite(fm: FiniteModule, B: GradedIdealChain, v) -> bool:
    k = B.stable_from
    # walk the orbit until it cycles after the chain has stabilised
    n = 0
    w = v
    seen_after_k = set()
    while True:
        for c in B[n].gb:
            if not fm.is_zero(fm.smul(c, w)):
                return False
        if n >= k:
            if w in seen_after_k:
                return True
            seen_after_k.add(w)
        w = fm.x(w)
        n += 1


# -- the special-ideal lattice ---------------------------------------------------------

@dataclass
class SpecialIdealLattice:
    module: object
    ideals: list
    certified: list
    submodules: list
    primes: list
    complete: bool
    checks: dict = field(default_factory=dict)

    def index(self, b: Ideal) -> int:
        return self.ideals.index(b)

    def delta_inverse(self, b: Ideal) -> Submodule:
        return self.submodules[self.index(b)]

    def to_json(self) -> dict:
        fmt = getattr(self.module, "format", str)
        out = {
            "ideals": [str(b) for b in self.ideals],
            "primes": [str(b) for b in self.primes],
            "delta": [
                {"ideal": str(b),
                 "submodule": ([fmt(g) for g in n.generators] if n is not None and n.generators is not None else None)}
                for b, n in zip(self.ideals, self.submodules)
            ],
            "complete": self.complete,
            "checks": dict(self.checks),
        }
        return out


def special_ideal_lattice(M, bound: int = DEFAULT_BOUND, generators=None) -> SpecialIdealLattice:
    """I(G) and A(G) for an x-torsion-free module, with Δ checked both ways.

    Finite modules are swept over every element, which yields the whole
    lattice.  Otherwise the ideals reachable from ``generators`` are closed
    under intersection and the result is marked incomplete.
    """
    if not is_x_torsion_free(M, bound):
        raise Refusal("module has x-torsion; pass G = H/Γ_x(H) instead")
    view = _finite_view(M)
    if generators is None:
        if view is None:
            raise Refusal("module cannot be enumerated; supply a generator list")
        fm, _, dec = view
        generators = [dec(v) for v in fm.elements()]
        complete = True
    else:
        generators = [M.canon(g) for g in generators]
        complete = False

    found: dict = {}
    for g in generators:
        lim, cert = limit_ideal(grann_element(M, g, bound))
        found[lim] = found.get(lim, True) and cert
    found.setdefault(unit_ideal(M.ring), True)
    changed = True
    while changed:
        changed = False
        current = list(found)
        for i, a in enumerate(current):
            for b in current[i + 1:]:
                c = intersect(a, b)
                if c not in found:
                    found[c] = found[a] and found[b]
                    changed = True

    ideals = sorted(found, key=lambda b: (-dimension(b), str(b)))
    certified = [found[b] for b in ideals]
    can_delta = view is not None or (isinstance(M, FiniteCyclicsModule) and M.closed_form)
    subs = [ann_of_chain(M, principal_chain(b), bound) if can_delta else None for b in ideals]

    primes = [b for b in ideals if not b.is_unit() and not _meet_reducible(b, ideals)]
    lat = SpecialIdealLattice(M, ideals, certified, subs, primes, complete)
    lat.checks = _lattice_checks(M, lat, bound) if can_delta else {"delta": None}
    return lat


def _meet_reducible(b, ideals) -> bool:
    above = [c for c in ideals if b.issubset(c) and c != b]
    if not above:
        return False
    return reduce(intersect, above) == b


def _lattice_checks(M, lat: SpecialIdealLattice, bound: int) -> dict:
    checks = {}
    # Δ^{-1} then Δ returns the ideal
    checks["delta_roundtrip"] = all(
        limit_ideal(grann_submodule(M, n.generators, bound))[0] == b
        for b, n in zip(lat.ideals, lat.submodules))
    # the submodules are distinct and reverse inclusion
    pairs_ok = True
    for (b1, n1) in zip(lat.ideals, lat.submodules):
        for (b2, n2) in zip(lat.ideals, lat.submodules):
            if b1.issubset(b2) != n2.issubset(n1):
                pairs_ok = False
    checks["order_reversing_bijection"] = pairs_ok
    checks["radical"] = all(is_radical(b) for b in lat.ideals)
    # b ∩ c must be the graded annihilator of N_b + N_c
    inter_ok = True
    for i, (b1, n1) in enumerate(zip(lat.ideals, lat.submodules)):
        for b2, n2 in list(zip(lat.ideals, lat.submodules))[i + 1:]:
            meet = intersect(b1, b2)
            if meet not in lat.ideals:
                inter_ok = False
                continue
            gens = list(n1.generators) + list(n2.generators)
            if limit_ideal(grann_submodule(M, gens, bound))[0] != meet:
                inter_ok = False
    checks["intersection_closed"] = inter_ok
    # every member is the intersection of the lattice primes above it
    checks["prime_intersections"] = all(
        reduce(intersect, [q for q in lat.primes if b.issubset(q)], unit_ideal(M.ring)) == b
        for b in lat.ideals)
    # A(G) idempotence: ann(grann(ann(B))) = ann(B)
    checks["ann_grann_idempotent"] = all(
        ann_of_chain(M, grann_submodule(M, n.generators, bound), bound) == n
        for n in lat.submodules)
    return checks


def maximal_special_primes(lat: SpecialIdealLattice, bound: int = DEFAULT_BOUND) -> list:
    """Maximal members of I(G) \\ {R}; each is prime and generates grann of
    every nonzero element of its special annihilator submodule."""
    if not lat.ideals:
        raise ValueError("empty lattice")
    proper = [b for b in lat.ideals if not b.is_unit()]
    maxima = [b for b in proper if not any(b.issubset(c) and b != c for c in proper)]
    M = lat.module
    for p_ in maxima:
        if p_ not in lat.primes or not is_radical(p_):
            raise AssertionError(f"maximal special ideal {p_} is not flagged prime")
        sub = lat.submodules[lat.index(p_)]
        if sub is None:
            continue
        samples = list(sub.elements) if sub.elements is not None else list(sub.generators)
        for g in samples:
            if M.is_zero(g):
                continue
            if limit_ideal(grann_element(M, g, bound))[0] != p_:
                raise AssertionError(f"element {M.format(g)} of the minimal submodule "
                                     f"does not have graded annihilator {p_}")
    return maxima


def smallest_positive_height_ideal(lat: SpecialIdealLattice) -> Ideal:
    """Intersection of the positive-height lattice primes (R if there are none)."""
    ring = lat.module.ring
    primes = [q for q in lat.primes if has_positive_height(q)]
    b = reduce(intersect, primes, unit_ideal(ring))
    if b not in lat.ideals:
        raise AssertionError(f"{b} is not a member of the lattice")
    for c in lat.ideals:
        if has_positive_height(c) and not b.issubset(c):
            raise AssertionError(f"{b} is not below positive-height member {c}")
    return b


def height_criterion_check(lat: SpecialIdealLattice, elements, bound: int = DEFAULT_BOUND) -> dict:
    """For each g: (i) bR[x,f] kills g, (ii) some c ∈ R°∩b has cx^n g = 0
    for n >> 0, (iii) some c ∈ R° does.  All three must agree."""
    M = lat.module
    b = smallest_positive_height_ideal(lat)
    killers = ann_of_chain(M, principal_chain(b), bound)
    rows = []
    for g in elements:
        lim = limit_ideal(grann_element(M, g, bound))[0]
        i = g in killers
        ii = has_positive_height(intersect(b, lim))
        iii = has_positive_height(lim)
        rows.append({"element": M.format(g), "i": i, "ii": ii, "iii": iii})
    return {"b": str(b), "rows": rows,
            "counterexamples": [r for r in rows if len({r["i"], r["ii"], r["iii"]}) > 1]}


# -- Theorem-style reports ------------------------------------------------------------

def split_ga4(G, b: RadicalDecomposition, U, bound: int = DEFAULT_BOUND) -> dict:
    """Split N = ann_G(bR[x,f]) along a partition U|V of b's prime components.

    ``U`` holds component indices or the component ideals themselves.
    Hypothesis failures appear as False checks, not exceptions.
    """
    comps = list(b.components)
    if len(comps) < 2:
        raise Refusal("splitting needs at least two prime components")
    u_idx = {comps.index(c) if isinstance(c, Ideal) else int(c) for c in U}
    v_idx = set(range(len(comps))) - u_idx
    if not u_idx or not v_idx:
        raise Refusal("U and V must both be non-empty")
    ring = G.ring
    a_rd = RadicalDecomposition(ring, tuple(comps[i] for i in sorted(u_idx)))
    c_rd = RadicalDecomposition(ring, tuple(comps[i] for i in sorted(v_idx)))
    bb, a, c = expand(b), expand(a_rd), expand(c_rd)
    N = ann_of_chain(G, principal_chain(bb), bound)
    L = ann_of_chain(G, principal_chain(a), bound)
    checks = {}
    checks["N_nonzero"] = not N.is_zero()
    checks["L_nonzero"] = not L.is_zero()
    checks["L_in_N"] = L.issubset(N)
    checks["L_ne_N"] = not N.issubset(L)
    checks["i"] = checks["L_nonzero"] and checks["L_in_N"] and checks["L_ne_N"]
    checks["iii"] = limit_ideal(grann_submodule(G, L.generators, bound))[0] == a
    quotient_ideal = expand(colon_rd(b, a_rd))
    checks["ii_colon_components"] = quotient_ideal == c and colon(bb, a) == c
    checks["ii"] = checks["ii_colon_components"] and _quotient_side(G, L, N, c, bound)
    return {
        "a": str(a), "c": str(c),
        "L": L.describe(), "N": N.describe(),
        "quotient_ideal": str(quotient_ideal),
        "checks": checks,
        "ok": all(v for v in checks.values()),
    }


def _quotient_side(G, L: Submodule, N: Submodule, c: Ideal, bound: int) -> bool:
    """N/L = ann_{G/L}(cR[x,f]) with corresponding ideal c."""
    view = _finite_view(G)
    if view is not None:
        fm, enc, _ = view
        Lf = fm.span([enc(g) for g in L.generators])
        Q, proj = fm.quotient(Lf)
        target = ann_of_chain(Q, principal_chain(c), bound)
        image = Q.span([proj(enc(g)) for g in N.generators])
        grann = limit_ideal(grann_submodule(Q, image.generators, bound))[0]
        return image == target and grann == c
    if isinstance(G, FiniteCyclicsModule) and G.closed_form:
        # L = ⊕ (J_i : a)/J_i, so G/L = ⊕ R/(J_i : a) with the same Frobenius
        a = limit_ideal(grann_submodule(G, L.generators, bound))[0]
        Q = FiniteCyclicsModule.frobenius(G.ring, [colon(j, a) if not a.issubset(j) else unit_ideal(G.ring)
                                                    for j in G.summands])
        target = ann_of_chain(Q, principal_chain(c), bound)
        image = Submodule(Q, generators=[Q.canon(g) for g in N.generators])
        grann = limit_ideal(grann_submodule(Q, image.generators, bound))[0]
        return image.issubset(target) and all(g in image_closure(Q, image) for g in target.generators) \
            and grann == c
    raise Refusal("quotient side needs a finite or closed-form module")


def image_closure(Q: FiniteCyclicsModule, image: Submodule) -> Submodule:
    """R-span membership for closed-form modules: componentwise ideal test."""
    comps = [[] for _ in range(Q.k)]
    for g in image.generators:
        for i, r in enumerate(g):
            comps[i].append(r)
    ideals = [Ideal(Q.ring, list(c) + list(j.gb)) for c, j in zip(comps, Q.summands)]
    # ⊕ (ideal_i / J_i) contains the R-span; equality needs generators split by
    # component, which ann_of_chain's generators always are
    return Submodule(Q, generators=image.generators,
                     test=lambda h: all(r in I for r, I in zip(Q.canon(h), ideals)))


def test_element_annihilator(H: CyclicTower, c, w0: int, h, bound: int) -> bool:
    """c r^{p^m} ∈ (b_n)^{[p^m]} for m = w0..bound, with h = r + b_n in H(a)."""
    amb = H.ring.ambient
    c = amb(c)
    if not c:
        raise ValueError("test element must be nonzero")
    n, r = H.canon(h)
    for m in range(w0, bound + 1):
        if not c * r.frobenius(m) in frobenius_power(H.b(n), m):
            return False
    return True


def ga15_equivalence_check(H, bound: int = DEFAULT_BOUND) -> dict:
    """Compare, for every h ∈ H, the four conditions of the HSL-number
    criterion; any disagreement is listed as a counterexample."""
    view = _finite_view(H)
    if view is None:
        raise Refusal("ga15_equivalence_check needs a finite module")
    fm, enc, dec = view
    m0 = hsl_number(fm)
    tors = gamma_x(fm)
    G, proj = fm.quotient(tors)
    lat = special_ideal_lattice(G, bound)
    b = smallest_positive_height_ideal(lat)
    bq = frobenius_power(b, m0)
    zero = zero_ideal(fm.ring)
    chain = GradedIdealChain(tuple([zero] * m0 + [bq]), True)
    assert validate_chain(chain)
    rows = []
    for v in fm.elements():
        g = grann_element(fm, v, bound)
        lim = g.limit()
        i = _killed_finite(fm, chain, v)
        ii = has_positive_height(intersect(b, g[m0]))
        iii = has_positive_height(intersect(b, lim))
        iv = has_positive_height(lim)
        rows.append({"element": H.format(dec(v)) if H is not fm else fm.format(v),
                     "i": i, "ii": ii, "iii": iii, "iv": iv})
    bad = [r for r in rows if len({r["i"], r["ii"], r["iii"], r["iv"]}) > 1]
    return {"hsl": m0, "b": str(b), "rows": rows, "counterexamples": bad}
