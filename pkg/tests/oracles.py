"""Independent brute-force oracles; nothing here touches Gröbner bases.

dim (S/J)_n = #monomials of degree n - rank span{m * g : deg m + deg g = n}
for J generated by the ring relations plus the ideal generators.
"""

from itertools import product
from math import comb


def monomials_of_degree(n, weights):
    """All exponent tuples with sum w_i e_i == n."""
    if not weights:
        return [()] if n == 0 else []
    w, rest = weights[0], weights[1:]
    out = []
    for k in range(n // w + 1):
        for tail in monomials_of_degree(n - k * w, rest):
            out.append((k,) + tail)
    return out


def _rank(rows, p):
    """Rank mod p of sparse rows {col: val}; plain Gaussian elimination."""
    pivots = {}  # col -> row (normalized so pivot entry is 1)
    rank = 0
    for row in rows:
        row = {c: v % p for c, v in row.items() if v % p}
        while row:
            col = max(row)
            if col in pivots:
                f = row[col]
                for c, v in pivots[col].items():
                    nv = (row.get(c, 0) - f * v) % p
                    if nv:
                        row[c] = nv
                    else:
                        row.pop(c, None)
            else:
                inv = pow(row[col], -1, p)
                pivots[col] = {c: v * inv % p for c, v in row.items()}
                rank += 1
                break
    return rank


def quotient_dims(polys, weights, p, upto):
    """{n: dim (S/(polys))_n} for 0 <= n <= upto; polys are dicts {mono: coeff}."""
    return {n: _dim_at(polys, weights, p, n) for n in range(upto + 1)}


def brute_colength(ring, ideal, max_degree=400):
    """λ(R/I) by summing graded pieces until max(weights) consecutive zeros
    occur beyond the top generator degree."""
    polys = [f.as_dict() for f in list(ring.relations) + list(ideal.generators)]
    w = ring.weights
    top = max(max(sum(a * b for a, b in zip(w, m)) for m in f) for f in polys)
    total = 0
    zeros = 0
    n = 0
    while n <= max_degree:
        dim = _dim_at(polys, w, ring.p, n)
        total += dim
        zeros = zeros + 1 if dim == 0 else 0
        if n >= top and zeros >= max(w):
            return total
        n += 1
    raise RuntimeError("oracle did not terminate below max_degree")


def _dim_at(polys, weights, p, n):
    for f in polys:
        assert len({sum(a * b for a, b in zip(weights, m)) for m in f}) == 1, "oracle needs homogeneous input"
    basis = monomials_of_degree(n, weights)
    index = {m: k for k, m in enumerate(basis)}
    rows = []
    for f in polys:
        d = sum(a * b for a, b in zip(weights, next(iter(f))))
        if d > n:
            continue
        for m in monomials_of_degree(n - d, weights):
            rows.append({index[tuple(a + b for a, b in zip(m, fm))]: c for fm, c in f.items()})
    return len(basis) - _rank(rows, p)


def brute_hilbert_coefficients(ring, ideal, upto):
    polys = [f.as_dict() for f in list(ring.relations) + list(ideal.generators)]
    return {n: _dim_at(polys, ring.weights, ring.p, n) for n in range(upto + 1)}


def koszul_betti_pattern(degrees):
    """{(i, j): b} for the Koszul complex on a regular sequence of the given degrees."""
    out = {}
    r = len(degrees)
    for bits in product((0, 1), repeat=r):
        i = sum(bits)
        j = sum(d for d, b in zip(degrees, bits) if b)
        out[(i, j)] = out.get((i, j), 0) + 1
    assert sum(out.values()) == 2**r and all(
        sum(b for (i, _), b in out.items() if i == k) == comb(r, k) for k in range(r + 1)
    )
    return out


def poly_coeffs_product(*factors):
    """Multiply integer polynomials given as {exp: coeff}."""
    out = {0: 1}
    for f in factors:
        nxt = {}
        for a, x in out.items():
            for b, y in f.items():
                nxt[a + b] = nxt.get(a + b, 0) + x * y
        out = {k: v for k, v in nxt.items() if v}
    return out
