"""Buchberger's algorithm over GF(p), normal forms and standard monomials.

Quotient rings are never handled by quotient arithmetic: their relations
are adjoined to the ideal and everything happens in the ambient ring.
"""

from __future__ import annotations

import heapq
import logging
from dataclasses import dataclass
from typing import Optional

from .algebra import (
    GREVLEX,
    GradedRing,
    Polynomial,
    PolynomialRing,
    TermOrder,
    mono_divides,
    mono_lcm,
    weighted_degree,
)
from .errors import InputError, NotZeroDimensionalError, ResourceCapError, RingMismatchError

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Ideal:
    ring: GradedRing
    generators: tuple
    homogeneous: bool = True

    def __post_init__(self):
        gens = tuple(self.generators)
        object.__setattr__(self, "generators", gens)
        if not gens:
            raise InputError("an ideal needs at least one generator")
        for g in gens:
            if not isinstance(g, Polynomial) or g.ring != self.ring.ambient:
                raise RingMismatchError("generator does not belong to the ambient ring")
            if g.is_zero():
                raise InputError("generators must be nonzero")
            if self.homogeneous and not g.is_homogeneous():
                raise InputError(f"generator {g} is not homogeneous")

    @classmethod
    def from_strings(cls, ring: GradedRing, gens, homogeneous: bool = True) -> "Ideal":
        return cls(ring, tuple(ring.parse(g) if isinstance(g, str) else g for g in gens), homogeneous)

    def generator_degrees(self):
        return [g.homogeneous_degree() for g in self.generators]

    def max_degree(self) -> int:
        return max(max(g.degrees()) for g in self.generators)

    def __str__(self):
        return "(" + ", ".join(map(str, self.generators)) + ")"


@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced Gröbner basis: monic generators sorted by ascending leading monomial."""

    generators: tuple
    order: TermOrder
    ring: PolynomialRing

    @property
    def leading_monomials(self):
        return [g.leading_monomial() for g in self.generators]

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)


# -- raw dict kernels -------------------------------------------------------
# A raw polynomial is a dict {monomial: coefficient mod p}, no zeros.

def _reduce(f, reducers, key, p, full=True):
    """Remainder of ``f`` on division by ``reducers`` = [(lead monomial, poly dict)].

    Every reducer must be monic.  With ``full=False`` only the head is reduced.
    """
    f = dict(f)
    rem = {}
    while f:
        m = max(f, key=key)
        c = f[m]
        for lm, g in reducers:
            if mono_divides(lm, m):
                shift = tuple(a - b for a, b in zip(m, lm))
                for gm, gc in g.items():
                    nm = tuple(a + b for a, b in zip(gm, shift))
                    v = (f.get(nm, 0) - c * gc) % p
                    if v:
                        f[nm] = v
                    else:
                        f.pop(nm, None)
                break
        else:
            rem[m] = c
            del f[m]
            if not full:
                rem.update(f)
                break
    return rem


def _monic(f, key, p):
    lm = max(f, key=key)
    inv = pow(f[lm], -1, p)
    return lm, {m: c * inv % p for m, c in f.items()}


def _spoly(lf, f, lg, g, p):
    lcm = mono_lcm(lf, lg)
    sf = tuple(a - b for a, b in zip(lcm, lf))
    sg = tuple(a - b for a, b in zip(lcm, lg))
    out = {}
    for m, c in f.items():
        nm = tuple(a + b for a, b in zip(m, sf))
        out[nm] = c
    for m, c in g.items():
        nm = tuple(a + b for a, b in zip(m, sg))
        v = (out.get(nm, 0) - c) % p
        if v:
            out[nm] = v
        else:
            out.pop(nm, None)
    return out


def _pure_power_bound(leads, weights):
    """Degree above which every monomial lies in (leads), or None if some
    variable has no pure power among ``leads``."""
    n = len(weights)
    best = [None] * n
    for m in leads:
        support = [i for i, e in enumerate(m) if e]
        if len(support) == 1:
            i = support[0]
            if best[i] is None or m[i] < best[i]:
                best[i] = m[i]
    if any(b is None for b in best):
        return None
    return sum(w * (b - 1) for w, b in zip(weights, best))


def buchberger(ideal: Ideal, order: TermOrder = GREVLEX, degree_budget: Optional[int] = None) -> GroebnerBasis:
    """Reduced Gröbner basis of ``ideal`` (plus the ring's quotient relations).

    Pairs are processed by ascending lcm degree, ties broken by pair index.
    Coprime leading monomials and the chain criterion discard pairs.  For
    homogeneous input, once the leading monomials contain a pure power of
    every variable, pairs above the resulting degree bound are dropped.
    ``degree_budget`` caps the lcm degree of any pair that must be reduced.
    """
    order = TermOrder.parse(order)
    amb = ideal.ring.ambient
    p = amb.p
    w = amb.weights
    key = order.key(w)
    inputs = list(ideal.ring.relations) + list(ideal.generators)
    homogeneous = all(f.is_homogeneous() for f in inputs)

    def deg(m):
        return weighted_degree(m, w)

    if degree_budget is not None:
        top = max(max(f.degrees()) for f in inputs)
        if top > degree_budget:
            raise ResourceCapError(
                f"input degree {top} exceeds degree budget {degree_budget}", degree=top, budget=degree_budget
            )

    basis = []  # list of (lead monomial, monic dict); None marks a removed slot
    pending = []  # heap of (lcm degree, i, j)
    pair_set = set()

    def add(f):
        lm, g = _monic(f, key, p)
        k = len(basis)
        basis.append((lm, g))
        for i in range(k):
            if basis[i] is None:
                continue
            lcm = mono_lcm(basis[i][0], lm)
            heapq.heappush(pending, (deg(lcm), i, k))
            pair_set.add((i, k))

    # seed with interreduced input, ascending in degree for homogeneous input
    seeds = sorted((f.as_dict() for f in inputs), key=lambda d: (min(deg(m) for m in d), key(max(d, key=key))))
    for f in seeds:
        r = _reduce(f, [b for b in basis if b is not None], key, p)
        if r:
            add(r)

    bound = _pure_power_bound([b[0] for b in basis], w) if homogeneous else None
    while pending:
        d, i, j = heapq.heappop(pending)
        pair_set.discard((i, j))
        if bound is not None and d > bound:
            continue
        li, fi = basis[i]
        lj, fj = basis[j]
        # criterion 1: coprime leading monomials
        if all(a == 0 or b == 0 for a, b in zip(li, lj)):
            continue
        # criterion 2: chain criterion
        lcm = mono_lcm(li, lj)
        chain = False
        for k, b in enumerate(basis):
            if k in (i, j) or b is None:
                continue
            if mono_divides(b[0], lcm) and (min(i, k), max(i, k)) not in pair_set and (
                min(j, k), max(j, k)
            ) not in pair_set:
                chain = True
                break
        if chain:
            continue
        if degree_budget is not None and d > degree_budget:
            raise ResourceCapError(
                f"S-pair degree {d} exceeds degree budget {degree_budget}", degree=d, budget=degree_budget
            )
        s = _spoly(li, fi, lj, fj, p)
        r = _reduce(s, basis, key, p)
        if r:
            add(r)
            if homogeneous:
                bound = _pure_power_bound([b[0] for b in basis], w)

    return _finish(basis, amb, order, key, p)


def _finish(basis, ring, order, key, p):
    leads = [b for b in basis if b is not None]
    # minimalize: drop generators whose lead is divisible by another lead
    minimal = []
    for idx, (lm, g) in enumerate(leads):
        redundant = False
        for jdx, (lm2, _) in enumerate(leads):
            if jdx == idx:
                continue
            if mono_divides(lm2, lm) and (lm2 != lm or jdx < idx):
                redundant = True
                break
        if not redundant:
            minimal.append((lm, g))
    # interreduce tails
    reduced = []
    for idx, (lm, g) in enumerate(minimal):
        others = [b for jdx, b in enumerate(minimal) if jdx != idx]
        tail = {m: c for m, c in g.items() if m != lm}
        tail = _reduce(tail, others, key, p)
        tail[lm] = 1
        reduced.append((lm, tail))
    reduced.sort(key=lambda b: key(b[0]))
    return GroebnerBasis(tuple(Polynomial(ring, g, order) for _, g in reduced), order, ring)


def normal_form(f: Polynomial, gb: GroebnerBasis) -> Polynomial:
    """Fully reduced remainder of ``f`` modulo ``gb``."""
    if f.ring != gb.ring:
        raise RingMismatchError("polynomial and basis live in different rings")
    if f.order is not gb.order:
        raise InputError(f"term order mismatch: {f.order.value} vs {gb.order.value}")
    key = gb.order.key(gb.ring.weights)
    reducers = [(g.leading_monomial(), g.as_dict()) for g in gb.generators]
    return Polynomial(gb.ring, _reduce(f.as_dict(), reducers, key, gb.ring.p), gb.order)


def is_zero_dimensional(gb: GroebnerBasis) -> bool:
    return _pure_power_bound(gb.leading_monomials, [1] * gb.ring.nvars) is not None


# -- standard monomials -----------------------------------------------------

def _minimal_monomials(monos):
    monos = sorted(set(monos), key=lambda m: (sum(m), m))
    out = []
    for m in monos:
        if not any(mono_divides(g, m) for g in out):
            out.append(m)
    return out


def _staircase(leads, n):
    """Yield standard monomials of the monomial ideal (leads), recursing on
    the first variable.  Requires a pure power of every variable."""
    if n == 0:
        if not leads:
            yield ()
        return
    if n == 1:
        a = min(m[0] for m in leads)
        for k in range(a):
            yield (k,)
        return
    firsts = [m[0] for m in leads if not any(m[1:])]
    top = min(firsts)
    for k in range(top):
        sub = _minimal_monomials(m[1:] for m in leads if m[0] <= k)
        for rest in _staircase(sub, n - 1):
            yield (k,) + rest


def count_standard_monomials(leads, n) -> int:
    """Number of monomials outside (leads).

    Recurses on the first variable, grouping the exponents of that variable
    into ranges over which the sliced ideal does not change.
    """
    leads = _minimal_monomials(leads)
    return _count(tuple(leads), n, {})


def _count(leads, n, memo):
    if any(not any(m) for m in leads):
        return 0
    if n == 1:
        return min(m[0] for m in leads)
    hit = memo.get(leads)
    if hit is not None:
        return hit
    top = min(m[0] for m in leads if not any(m[1:]))
    cuts = sorted({m[0] for m in leads if m[0] < top} | {0, top})
    total = 0
    for lo, hi in zip(cuts, cuts[1:]):
        sub = tuple(_minimal_monomials(m[1:] for m in leads if m[0] <= lo))
        total += (hi - lo) * _count(sub, n - 1, memo)
    memo[leads] = total
    return total


def standard_monomials(gb: GroebnerBasis):
    """List of (monomial, weighted degree) for the finite quotient basis."""
    if not is_zero_dimensional(gb):
        raise NotZeroDimensionalError("ideal is not zero-dimensional; standard monomials are infinite")
    leads = _minimal_monomials(gb.leading_monomials)
    w = gb.ring.weights
    key = gb.order.key(w)
    monos = sorted(_staircase(leads, gb.ring.nvars), key=key)
    return [(m, weighted_degree(m, w)) for m in monos]


def colength(ring: GradedRing, ideal: Ideal, order: TermOrder = GREVLEX, degree_budget=None, gb=None) -> int:
    """λ(R/I) as a count of standard monomials of (relations + I)."""
    if gb is None:
        gb = buchberger(ideal, order, degree_budget)
    if not is_zero_dimensional(gb):
        raise NotZeroDimensionalError(f"R/I has infinite length for I = {ideal}")
    return count_standard_monomials(gb.leading_monomials, ring.nvars)
