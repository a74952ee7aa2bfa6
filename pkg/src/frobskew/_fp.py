"""Row reduction over F_p on lists of int tuples (dimensions stay small)."""

from __future__ import annotations

from itertools import product


def rref(rows, p):
    """Reduced row echelon form; returns (rows, pivot columns)."""
    rows = [list(r) for r in rows]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] % p), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], -1, p)
        rows[r] = [v * inv % p for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] % p:
                f = rows[i][c]
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return [tuple(row) for row in rows[:r]], pivots


def reduce_vec(v, basis, pivots, p):
    """Clear the pivot coordinates of v using an rref basis."""
    v = list(v)
    for row, c in zip(basis, pivots):
        f = v[c] % p
        if f:
            v = [(a - f * b) % p for a, b in zip(v, row)]
    return tuple(v)


def in_span(v, basis, pivots, p):
    return not any(reduce_vec(v, basis, pivots, p))


def kernel(columns, p):
    """Basis of { a : sum a_i columns[i] = 0 } for column vectors in F_p^m."""
    k = len(columns)
    if k == 0:
        return []
    m = len(columns[0])
    # rows of the matrix whose columns are `columns`
    mat = [[columns[j][i] for j in range(k)] for i in range(m)]
    red, pivots = rref(mat, p) if m else ([], [])
    free = [j for j in range(k) if j not in pivots]
    out = []
    for f in free:
        vec = [0] * k
        vec[f] = 1
        for row, c in zip(red, pivots):
            vec[c] = (-row[f]) % p
        out.append(tuple(vec))
    return out


def span_elements(basis, p, dim):
    """Every vector in the span of ``basis`` (enumerated; small cases only)."""
    zero = (0,) * dim
    if not basis:
        return frozenset([zero])
    out = set()
    for coeffs in product(range(p), repeat=len(basis)):
        v = [0] * dim
        for a, row in zip(coeffs, basis):
            if a:
                v = [(x + a * y) % p for x, y in zip(v, row)]
        out.add(tuple(v))
    return frozenset(out)
