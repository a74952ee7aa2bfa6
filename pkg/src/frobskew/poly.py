"""Sparse multivariate polynomials over a prime field F_p.

A polynomial is an immutable map from exponent tuples to nonzero residues
mod p.  Term order lives on the ring, so two rings that differ only in their
order produce polynomials that compare equal but sort differently.
"""

from __future__ import annotations

import re
from functools import cached_property
from typing import Iterable, Mapping


class RingMismatch(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


# -- monomial orders --------------------------------------------------------

def _grevlex_key(e):
    return (sum(e),) + tuple(-x for x in reversed(e))


def _lex_key(e):
    return e


def _make_key(order, n):
    if order == "grevlex":
        return _grevlex_key
    if order == "lex":
        return _lex_key
    if isinstance(order, tuple) and order[0] == "elim":
        k = order[1]
        if not 0 <= k <= n:
            raise ValueError(f"elimination block {k} out of range for {n} variables")

        def key(e, k=k):
            return _grevlex_key(e[:k]) + _grevlex_key(e[k:])
        return key
    raise ValueError(f"unknown monomial order {order!r}")


def _order_name(order):
    if isinstance(order, tuple):
        return f"elim{order[1]}"
    return order


class PolyRing:
    """F_p[x_1..x_n] with a fixed monomial order.

    ``order`` is ``"grevlex"`` (default), ``"lex"`` or ``("elim", k)``, a
    block order that eliminates the first ``k`` variables.
    """

    def __init__(self, p: int, variables: Iterable[str], order="grevlex"):
        variables = tuple(variables)
        if not is_prime(p):
            raise ValueError(f"characteristic {p} is not prime")
        if len(set(variables)) != len(variables):
            raise ValueError(f"variable names not distinct: {variables}")
        for v in variables:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", v):
                raise ValueError(f"bad variable name {v!r}")
        self.p = p
        self.variables = variables
        self.n = len(variables)
        self.order = order
        self.key = _make_key(order, self.n)
        self._index = {v: i for i, v in enumerate(variables)}

    # rings are compared structurally; the order matters for canonical forms
    def _sig(self):
        return (self.p, self.variables, self.order)

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self._sig() == other._sig()

    def __hash__(self):
        return hash(self._sig())

    def __repr__(self):
        return f"PolyRing(p={self.p}, vars={','.join(self.variables)}, order={_order_name(self.order)})"

    # the ambient interface shared with QuotientRing
    @property
    def ambient(self) -> "PolyRing":
        return self

    @property
    def defining_gens(self) -> tuple:
        return ()

    # a polynomial ring is a domain, hence equidimensional
    equidimensional_assumed = True

    @property
    def dim(self) -> int:
        return self.n

    def same_space(self, other: "PolyRing") -> bool:
        """Same coefficient field and variables, order ignored."""
        return self.p == other.p and self.variables == other.variables

    def with_order(self, order) -> "PolyRing":
        return PolyRing(self.p, self.variables, order)

    def extend(self, names, order="grevlex") -> "PolyRing":
        """New ring with ``names`` prepended to the variable list."""
        return PolyRing(self.p, tuple(names) + self.variables, order)

    # -- constructors --
    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.const(1)

    def const(self, c: int) -> "Polynomial":
        c %= self.p
        return Polynomial(self, {(0,) * self.n: c} if c else {})

    def var(self, name) -> "Polynomial":
        i = name if isinstance(name, int) else self._index[name]
        e = [0] * self.n
        e[i] = 1
        return Polynomial(self, {tuple(e): 1})

    def gens(self):
        return [self.var(i) for i in range(self.n)]

    def monomial(self, exps, coeff=1) -> "Polynomial":
        exps = tuple(exps)
        if len(exps) != self.n:
            raise ValueError("exponent vector has wrong length")
        coeff %= self.p
        return Polynomial(self, {exps: coeff} if coeff else {})

    def __call__(self, x) -> "Polynomial":
        if isinstance(x, Polynomial):
            if not self.same_space(x.ring):
                raise RingMismatch(f"{x.ring} vs {self}")
            return x if x.ring == self else Polynomial(self, x.terms)
        if isinstance(x, int):
            return self.const(x)
        if isinstance(x, str):
            return self.parse(x)
        raise TypeError(f"cannot coerce {type(x).__name__} into {self}")

    def parse(self, text: str) -> "Polynomial":
        return parse_poly(self, text)

    def parse_list(self, text: str) -> list["Polynomial"]:
        text = text.strip()
        if not text:
            return []
        return [self.parse(t) for t in _split_top(text, ",")]


class Polynomial:
    """Immutable polynomial; ``terms`` maps exponent tuples to residues."""

    __slots__ = ("ring", "terms", "__dict__")

    def __init__(self, ring: PolyRing, terms: Mapping[tuple, int]):
        self.ring = ring
        self.terms = dict(terms)

    # -- canonical data --
    @cached_property
    def sorted_terms(self) -> list:
        key = self.ring.key
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    @property
    def lm(self) -> tuple:
        return self.sorted_terms[0][0]

    @property
    def lc(self) -> int:
        return self.sorted_terms[0][1]

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def monic(self) -> "Polynomial":
        if not self.terms:
            return self
        inv = pow(self.lc, -1, self.ring.p)
        return self.scale(inv)

    def scale(self, c: int) -> "Polynomial":
        p = self.ring.p
        c %= p
        if not c:
            return self.ring.zero()
        return Polynomial(self.ring, {m: v * c % p for m, v in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring.same_space(other.ring) and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring.p, self.ring.variables, frozenset(self.terms.items())))

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if not self.ring.same_space(other.ring):
                raise RingMismatch(f"{self.ring} vs {other.ring}")
            return other
        if isinstance(other, int):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.ring.p
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = (out.get(m, 0) + c) % p
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.ring.p
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = (out.get(m, 0) + c1 * c2) % p
        return Polynomial(self.ring, {m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def frobenius(self, e: int = 1) -> "Polynomial":
        """f^(p^e), computed termwise since c^p = c in F_p."""
        q = self.ring.p ** e
        return Polynomial(self.ring, {tuple(a * q for a in m): c for m, c in self.terms.items()})

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative exponent")
        result = self.ring.one()
        base = self
        p = self.ring.p
        # base-p expansion: f^k = prod (f^(p^i))^(d_i)
        while k:
            k, d = divmod(k, p)
            for _ in range(d):
                result = result * base
            if k:
                base = base.frobenius(1)
        return result

    def mul_term(self, mono: tuple, c: int) -> "Polynomial":
        p = self.ring.p
        return Polynomial(self.ring, {tuple(a + b for a, b in zip(m, mono)): v * c % p
                                      for m, v in self.terms.items()})

    def divide_exact(self, g: "Polynomial") -> "Polynomial":
        """Quotient self / g; raises ValueError if g does not divide self."""
        if not g:
            raise ZeroDivisionError("division by the zero polynomial")
        p = self.ring.p
        key = self.ring.key
        glm, glc = g.lm, g.lc
        inv = pow(glc, -1, p)
        rest = dict(self.terms)
        quot = {}
        while rest:
            m = max(rest, key=key)
            if not all(a >= b for a, b in zip(m, glm)):
                raise ValueError(f"{g} does not divide {self}")
            shift = tuple(a - b for a, b in zip(m, glm))
            c = rest[m] * inv % p
            quot[shift] = c
            for gm, gc in g.terms.items():
                nm = tuple(a + b for a, b in zip(shift, gm))
                v = (rest.get(nm, 0) - c * gc) % p
                if v:
                    rest[nm] = v
                else:
                    rest.pop(nm, None)
        return Polynomial(self.ring, quot)

    def diff(self, i: int) -> "Polynomial":
        """Partial derivative in the i-th variable."""
        out = {}
        for m, c in self.terms.items():
            a = m[i]
            if a % self.ring.p:
                e = list(m)
                e[i] -= 1
                out[tuple(e)] = c * a % self.ring.p
        return Polynomial(self.ring, out)

    def change_ring(self, ring: PolyRing, positions=None) -> "Polynomial":
        """Move into ``ring``; ``positions[i]`` is the target index of variable i."""
        if positions is None:
            positions = [ring.variables.index(v) for v in self.ring.variables]
        out = {}
        for m, c in self.terms.items():
            e = [0] * ring.n
            for i, a in enumerate(m):
                if a:
                    e[positions[i]] = a
            out[tuple(e)] = c
        return Polynomial(ring, out)

    def __repr__(self):
        return f"Polynomial({self})"

    def __str__(self):
        return format_poly(self)


# -- text form --------------------------------------------------------------

def format_poly(f: Polynomial) -> str:
    if not f.terms:
        return "0"
    names = f.ring.variables
    parts = []
    for m, c in f.sorted_terms:
        factors = []
        for name, a in zip(names, m):
            if a == 1:
                factors.append(name)
            elif a:
                factors.append(f"{name}^{a}")
        if not factors:
            parts.append(str(c))
        elif c == 1:
            parts.append("*".join(factors))
        else:
            parts.append(f"{c}*" + "*".join(factors))
    return "+".join(parts)


def _split_top(text, sep):
    depth = 0
    out, cur = [], []
    for ch in text:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if ch == sep and depth == 0:
            out.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    out.append("".join(cur))
    return out


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*^()]))")


class ParseError(ValueError):
    def __init__(self, msg, column=None):
        super().__init__(msg if column is None else f"{msg} (column {column})")
        self.column = column


def parse_poly(ring: PolyRing, text: str) -> Polynomial:
    """Parse ``2*x*y^2+1``-style text; ``**`` and parentheses also accepted."""
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r} in {text!r}", pos + 1)
        tokens.append((m.group(1) or m.group(2) or m.group(3), m.start(m.lastindex) + 1))
        pos = m.end()
    if not tokens:
        raise ParseError("empty polynomial")
    toks = tokens + [(None, len(text) + 1)]
    i = 0

    def peek():
        return toks[i][0]

    def take():
        nonlocal i
        t = toks[i]
        i += 1
        return t

    def expr():
        sign = 1
        if peek() in ("+", "-"):
            sign = -1 if take()[0] == "-" else 1
        acc = term() if sign == 1 else -term()
        while peek() in ("+", "-"):
            op = take()[0]
            t = term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term():
        acc = power()
        while peek() == "*":
            take()
            acc = acc * power()
        return acc

    def power():
        base = atom()
        if peek() in ("^", "**"):
            take()
            tok, col = take()
            if tok is None or not tok.isdigit():
                raise ParseError(f"expected exponent in {text!r}", col)
            return base ** int(tok)
        return base

    def atom():
        tok, col = take()
        if tok is None:
            raise ParseError(f"unexpected end of {text!r}", col)
        if tok.isdigit():
            return ring.const(int(tok))
        if tok == "(":
            v = expr()
            if take()[0] != ")":
                raise ParseError(f"unbalanced parenthesis in {text!r}", col)
            return v
        if tok == "-":
            return -atom()
        if tok in ring._index:
            return ring.var(tok)
        raise ParseError(f"unknown symbol {tok!r}", col)

    result = expr()
    if peek() is not None:
        raise ParseError(f"trailing input in {text!r}", toks[i][1])
    return result
