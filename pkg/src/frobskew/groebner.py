"""Division, Buchberger's algorithm and elimination over F_p.

Internally polynomials are plain ``{exponent: coeff}`` dicts and basis
elements are kept monic, so reduction never needs field inverses.
"""

from __future__ import annotations

import heapq
from functools import lru_cache

from .poly import Polynomial, PolyRing, RingMismatch

DEFAULT_PAIR_LIMIT = 50_000


class ResourceError(RuntimeError):
    """A computation exceeded its configured budget."""


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _coprime(a, b):
    return all(not (x and y) for x, y in zip(a, b))


def _lead(terms, key):
    return max(terms, key=key)


def _monic(terms, key, p):
    lm = _lead(terms, key)
    inv = pow(terms[lm], -1, p)
    if inv == 1:
        return lm, dict(terms)
    return lm, {m: c * inv % p for m, c in terms.items()}


class _Divisors:
    """Divisor lookup over a growing list of monic basis elements.

    Any element whose leading monomial divides m may be used to reduce m, so
    a positive answer is cached for good; a negative one is remembered
    together with how much of the list has been searched.
    """

    def __init__(self, key, basis=()):
        self.key = key
        self.basis = []
        self.lms = []
        self.memo = {}
        self.keys = {}
        for b in basis:
            self.add(b)

    def add(self, elem):
        self.basis.append(elem)
        self.lms.append(elem[0])

    def sort_key(self, m):
        k = self.keys.get(m)
        if k is None:
            k = self.keys[m] = tuple(-x for x in self.key(m))
        return k

    def find(self, m):
        hit = self.memo.get(m)
        if hit is not None and hit[0] >= 0:
            return self.basis[hit[0]]
        start = 0 if hit is None else hit[1]
        lms = self.lms
        for k in range(start, len(lms)):
            g = lms[k]
            for a, b in zip(g, m):
                if a > b:
                    break
            else:
                self.memo[m] = (k, 0)
                return self.basis[k]
        self.memo[m] = (-1, len(lms))
        return None


def _reduce(terms, basis, key, p):
    """Full reduction of ``terms`` by monic ``basis`` [(lm, terms)]."""
    if not terms or not basis:
        return dict(terms)
    return _reduce_with(terms, _Divisors(key, basis), p)


def _reduce_with(terms, div, p):
    f = dict(terms)
    if not f:
        return f
    sk = div.sort_key
    heap = [(sk(m), m) for m in f]
    heapq.heapify(heap)
    rem = {}
    while heap:
        _, m = heapq.heappop(heap)
        c = f.pop(m, None)
        if c is None:
            continue
        found = div.find(m)
        if found is None:
            rem[m] = c
            continue
        glm, g = found
        shift = tuple(a - b for a, b in zip(m, glm))
        for gm, gc in g.items():
            if gm == glm:
                continue
            nm = tuple(a + b for a, b in zip(shift, gm))
            old = f.get(nm)
            v = ((old or 0) - c * gc) % p
            if v:
                f[nm] = v
                if old is None:
                    heapq.heappush(heap, (sk(nm), nm))
            elif old is not None:
                del f[nm]
    return rem


def _spoly(f, g, key, p):
    (flm, ft), (glm, gt) = f, g
    l = _lcm(flm, glm)
    sf = tuple(a - b for a, b in zip(l, flm))
    sg = tuple(a - b for a, b in zip(l, glm))
    out = {}
    for m, c in ft.items():
        out[tuple(a + b for a, b in zip(m, sf))] = c
    for m, c in gt.items():
        nm = tuple(a + b for a, b in zip(m, sg))
        v = (out.get(nm, 0) - c) % p
        if v:
            out[nm] = v
        else:
            out.pop(nm, None)
    return out


def _buchberger(polys, key, p, pair_limit, weights=None):
    if weights is None:
        wdeg = sum
    else:
        wdeg = lambda m: sum(w * a for w, a in zip(weights, m))
    basis = []          # every polynomial ever added, (lm, terms), monic
    active = []         # indices of the current minimal basis
    pairs = {}          # (i, j) -> lcm
    heap = []
    sugar = []          # sugar degree of each basis element

    def update(h):
        nonlocal active
        hlm = basis[h][0]
        cand = [(g, _lcm(hlm, basis[g][0])) for g in active]
        keep = []
        for idx, (g1, l1) in enumerate(cand):
            if _coprime(hlm, basis[g1][0]):
                keep.append((g1, l1))
                continue
            others = cand[idx + 1:] + keep
            if not any(_divides(l2, l1) for _, l2 in others):
                keep.append((g1, l1))
        new = [(g, l) for g, l in keep if not _coprime(hlm, basis[g][0])]
        for (g1, g2), l in list(pairs.items()):
            if (_divides(hlm, l) and _lcm(basis[g1][0], hlm) != l
                    and _lcm(hlm, basis[g2][0]) != l):
                del pairs[(g1, g2)]
        for g, l in new:
            pairs[(g, h)] = l
            dl = wdeg(l)
            sp_ = max(sugar[g] + dl - wdeg(basis[g][0]), sugar[h] + dl - wdeg(hlm))
            heapq.heappush(heap, (sp_, key(l), g, h))
        active = [g for g in active if not _divides(hlm, basis[g][0])] + [h]

    div = _Divisors(key)
    for f in polys:
        h = _reduce_with(f, div, p) if f else f
        if h:
            if all(m == (0,) * len(m) for m in h):
                return [((0,) * len(next(iter(h))), {(0,) * len(next(iter(h))): 1})]
            basis.append(_monic(h, key, p))
            div.add(basis[-1])
            sugar.append(max(wdeg(m) for m in h))
            update(len(basis) - 1)

    done = 0
    while heap:
        s_deg, _, i, j = heapq.heappop(heap)
        if (i, j) not in pairs:
            continue
        del pairs[(i, j)]
        done += 1
        if done > pair_limit:
            raise ResourceError(f"Buchberger exceeded pair limit {pair_limit}")
        s = _spoly(basis[i], basis[j], key, p)
        h = _reduce_with(s, div, p)
        if h:
            if all(m == (0,) * len(m) for m in h):
                return [((0,) * len(next(iter(h))), {(0,) * len(next(iter(h))): 1})]
            basis.append(_monic(h, key, p))
            div.add(basis[-1])
            sugar.append(max(s_deg, max(wdeg(m) for m in h)))
            update(len(basis) - 1)

    G = [basis[g] for g in active]
    # minimal basis is already ensured; inter-reduce tails
    G.sort(key=lambda t: key(t[0]))
    out = []
    for idx, (lm, t) in enumerate(G):
        rest = G[:idx] + G[idx + 1:]
        tail = {m: c for m, c in t.items() if m != lm}
        tail = _reduce(tail, rest, key, p)
        tail[lm] = 1
        out.append((lm, tail))
    out.sort(key=lambda t: key(t[0]), reverse=True)
    return out


@lru_cache(maxsize=4096)
def _gb_cached(ring: PolyRing, gens: frozenset, pair_limit: int, weights=None):
    polys = [g.terms for g in gens if g]
    raw = _buchberger(polys, ring.key, ring.p, pair_limit, weights)
    return tuple(Polynomial(ring, t) for _, t in raw)


def _check_ring(polys, ring=None):
    for f in polys:
        if ring is None:
            ring = f.ring
        elif not ring.same_space(f.ring):
            raise RingMismatch(f"{f.ring} vs {ring}")
    return ring


def reduced_groebner(gens, ring: PolyRing | None = None,
                     pair_limit: int = DEFAULT_PAIR_LIMIT, weights=None) -> list[Polynomial]:
    """Reduced Groebner basis, monic and sorted by decreasing leading monomial.

    ``weights`` only steers the pair selection (sugar degree); the result
    does not depend on it.
    """
    gens = list(gens)
    ring = _check_ring(gens, ring)
    if ring is None:
        return []
    gens = frozenset(ring(g) for g in gens if g)
    return list(_gb_cached(ring, gens, pair_limit, None if weights is None else tuple(weights)))


def normal_form(f: Polynomial, basis) -> Polynomial:
    """Remainder of ``f`` under full multivariate division by ``basis``.

    ``basis`` need not be a Groebner basis; the result then still lies in
    ``f + (basis)`` and is irreducible, though not unique.
    """
    basis = list(basis)
    ring = f.ring
    _check_ring(basis, ring)
    key, p = ring.key, ring.p
    mb = [_monic(g.terms, key, p) for g in basis if g]
    if any(not any(lm) for lm, _ in mb):
        return ring.zero()
    return Polynomial(ring, _reduce(f.terms, mb, key, p))


def eliminate(gens, k: int, ring: PolyRing | None = None,
              pair_limit: int = DEFAULT_PAIR_LIMIT, weights=None) -> list[Polynomial]:
    """Reduced basis of (gens) intersected with F_p[x_{k+1}..x_n]."""
    gens = list(gens)
    ring = _check_ring(gens, ring)
    if ring is None:
        return []
    if not 0 <= k <= ring.n:
        raise ValueError(f"cannot eliminate {k} of {ring.n} variables")
    if k == 0:
        return reduced_groebner(gens, ring, pair_limit)
    er = ring.with_order(("elim", k))
    gb = reduced_groebner([er(g) for g in gens], er, pair_limit, weights)
    kept = [ring(g) for g in gb if all(not any(m[:k]) for m in g.terms)]
    return reduced_groebner(kept, ring, pair_limit)


def frobenius_preimage_gens(gens, e: int, ring: PolyRing | None = None,
                            pair_limit: int = DEFAULT_PAIR_LIMIT) -> list[Polynomial]:
    """Generators of { r : r^(p^e) in (gens) } in the polynomial ring.

    One step adjoins y_i, adds y_i - x_i^p, eliminates the x_i and renames y
    back to x; coefficients need no root extraction because c^p = c in F_p.
    Larger e iterates the step, since r^(p^e) ∈ b iff r^p ∈ f^-(e-1)(b).
    """
    if e < 1:
        raise ValueError("frobenius_preimage needs e >= 1")
    gens = list(gens)
    ring = _check_ring(gens, ring)
    if ring is None:
        return []
    out = reduced_groebner(gens, ring, pair_limit)
    for _ in range(e):
        if not out or out[0].is_constant():
            break
        out = _preimage_step(out, ring, pair_limit)
    return out


def _preimage_step(gb, ring, pair_limit):
    """f^-1 of the ideal with reduced basis ``gb``.

    The ideal is homogenised first (with h), so that together with
    y_i - x_i^p everything is homogeneous once y_i has weight p; the weighted
    sugar then keeps the elimination degree by degree.  Setting h = 1
    afterwards is harmless because homogenisation is multiplicative.
    """
    n, p = ring.n, ring.p
    homog = all(len({sum(m) for m in g.terms}) == 1 for g in gb)
    if homog:
        src, m = gb, n
    else:
        hname = _fresh_names(ring.variables, "h", 1)[0]
        hr = PolyRing(p, ring.variables + (hname,), "grevlex")
        dr = ring.with_order("grevlex")
        src = []
        for g in reduced_groebner([dr(g) for g in gb], dr, pair_limit):
            d = max(sum(e) for e in g.terms)
            src.append(Polynomial(hr, {e + (d - sum(e),): c for e, c in g.terms.items()}))
        m = n + 1
        ring_m = hr
    names = (ring.variables if homog else ring_m.variables)
    ynames = _fresh_names(names, "y", m)
    big = PolyRing(p, tuple(names) + tuple(ynames), ("elim", m))
    lift = [g.change_ring(big, list(range(m))) for g in src]
    # b ⊆ f^-1(b), and g(y) ≡ g^p modulo the relations, so these are free hints
    hints = [g.change_ring(big, list(range(m, 2 * m))) for g in src]
    rel = [big.var(m + i) - big.var(i) ** p for i in range(m)]
    weights = (1,) * m + (p,) * m
    elim = eliminate(lift + rel + hints, m, big, pair_limit, weights)
    back = []
    for g in elim:
        t = {}
        for e, c in g.terms.items():
            k = e[m:m + n]
            t[k] = (t.get(k, 0) + c) % p
        back.append(Polynomial(ring, {k: c for k, c in t.items() if c}))
    return reduced_groebner(back, ring, pair_limit)


def _fresh_names(existing, stem, count):
    taken = set(existing)
    out = []
    i = 0
    while len(out) < count:
        name = f"_{stem}{i}"
        if name not in taken:
            out.append(name)
        i += 1
    return out
