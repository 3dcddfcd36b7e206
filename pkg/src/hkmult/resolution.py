"""Graded Betti numbers of finite-length R/I by Koszul homology.

b_ij = dim_K Tor_i(R/I, K)_j is read off the homology of the Koszul complex
K(x_1..x_n) tensored with R/I.  Since R/I has a finite monomial basis, each
internal degree of that complex is a finite-dimensional GF(p)-space and the
homology is plain linear algebra.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Optional

from .algebra import GREVLEX, GradedRing, TermOrder, prime_power_exponent
from .errors import (
    DivisibilityError,
    IdentityViolation,
    InputError,
    NotPowerOfCharacteristicError,
    NotZeroDimensionalError,
    QuotientNotSupportedError,
)
from .groebner import Ideal, _reduce, buchberger, is_zero_dimensional, standard_monomials
from .hilbert import HilbertSeries, LaurentPoly, evaluate_at_one, hilbert_series_quotient, hilbert_series_ring

ChiPolynomial = LaurentPoly


@dataclass(frozen=True)
class BettiTable:
    """{(i, j): b_ij} with only positive entries; ``p`` is the characteristic."""

    entries: dict
    p: int

    def __post_init__(self):
        clean = {(int(i), int(j)): int(b) for (i, j), b in self.entries.items() if b}
        if any(b < 0 for b in clean.values()):
            raise ValueError("Betti numbers are nonnegative")
        object.__setattr__(self, "entries", dict(sorted(clean.items())))

    @property
    def projective_dimension(self) -> int:
        return max((i for i, _ in self.entries), default=0)

    def __getitem__(self, ij) -> int:
        return self.entries.get(ij, 0)

    def row(self, i):
        """Internal degrees of the i-th module, with multiplicity, ascending."""
        return [j for (k, j), b in self.entries.items() if k == i for _ in range(b)]

    def totals(self):
        out = {}
        for (i, _), b in self.entries.items():
            out[i] = out.get(i, 0) + b
        return out

    def to_json(self):
        return [{"i": i, "j": j, "b": b} for (i, j), b in self.entries.items()]

    def __eq__(self, other):
        return isinstance(other, BettiTable) and self.entries == other.entries and self.p == other.p

    def __hash__(self):
        return hash((self.p, tuple(self.entries.items())))


def rank_mod_p(rows, p: int) -> int:
    """Rank over GF(p) of a list of equal-length integer rows."""
    rows = [[x % p for x in r] for r in rows]
    rows = [r for r in rows if any(r)]
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    for col in range(ncols):
        pivot = None
        for r in range(rank, len(rows)):
            if rows[r][col]:
                pivot = r
                break
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        prow = rows[rank]
        inv = pow(prow[col], -1, p)
        prow[:] = [x * inv % p for x in prow]
        for r in range(rank + 1, len(rows)):
            f = rows[r][col]
            if f:
                row = rows[r]
                rows[r] = [(a - f * b) % p for a, b in zip(row, prow)]
        rank += 1
        if rank == len(rows):
            break
    return rank


@dataclass
class KoszulSlice:
    i: int
    j: int
    dim: int
    rank_out: int  # rank of d_i : K_i -> K_{i-1} in degree j
    rank_in: int  # rank of d_{i+1} : K_{i+1} -> K_i in degree j
    homology: int

    def audit(self) -> bool:
        """dim = rank out + homology + rank in, with image(d_{i+1}) inside ker(d_i)."""
        kernel = self.dim - self.rank_out
        return self.homology >= 0 and self.rank_in <= kernel and self.dim == self.rank_out + self.homology + self.rank_in


def koszul_slices(ring: GradedRing, ideal: Ideal, order: TermOrder = GREVLEX, check_complex: bool = False):
    """Dimension bookkeeping of every nonzero slice of K(x) ⊗ R/I."""
    if not ring.is_polynomial_ring:
        raise QuotientNotSupportedError(
            "Koszul Betti numbers need a polynomial ambient ring; use koszul_chi for regular sequences"
        )
    gb = buchberger(ideal, order)
    if not is_zero_dimensional(gb):
        raise NotZeroDimensionalError(f"R/I has infinite length for I = {ideal}")
    basis = standard_monomials(gb)
    p = ring.p
    n = ring.nvars
    w = ring.weights
    index = {m: k for k, (m, _) in enumerate(basis)}
    key = gb.order.key(w)
    reducers = [(g.leading_monomial(), g.as_dict()) for g in gb.generators]
    # mult[s][k]: x_s * basis[k] in R/I as {basis index: coeff}
    mult = []
    for s in range(n):
        row = []
        for m, _ in basis:
            xm = tuple(e + (1 if t == s else 0) for t, e in enumerate(m))
            if xm in index:
                row.append({index[xm]: 1})
            else:
                nf = _reduce({xm: 1}, reducers, key, p)
                row.append({index[mm]: c for mm, c in nf.items()})
        mult.append(row)

    # cells[i][j] = ordered list of (subset, basis index) of internal degree j
    cells = []
    for i in range(n + 1):
        by_deg = {}
        for S in combinations(range(n), i):
            ws = sum(w[s] for s in S)
            for k, (_, dm) in enumerate(basis):
                by_deg.setdefault(ws + dm, []).append((S, k))
        cells.append(by_deg)

    max_std = max(d for _, d in basis)
    bound = max_std + sum(w)

    matrices = {}

    def matrix(i, j):
        """Rows: images under d_i of the degree-j basis of K_i, in K_{i-1} coordinates."""
        if (i, j) in matrices:
            return matrices[i, j]
        rows = []
        if 0 < i <= n:
            src = cells[i].get(j, [])
            tgt = cells[i - 1].get(j, [])
            pos = {c: k for k, c in enumerate(tgt)}
            for S, b in src:
                vec = [0] * len(tgt)
                for t, s in enumerate(S):
                    sign = -1 if t % 2 else 1
                    T_ = S[:t] + S[t + 1:]
                    for bb, c in mult[s][b].items():
                        vec[pos[(T_, bb)]] += sign * c
                rows.append(vec)
        matrices[i, j] = rows
        return rows

    def rank_d(i, j):
        rows = matrix(i, j)
        return rank_mod_p(rows, p) if rows and rows[0] else 0

    slices = []
    for i in range(n + 1):
        for j in sorted(cells[i]):
            assert 0 <= j <= bound, "Koszul slice outside the documented degree range"
            if check_complex and 1 < i + 1 <= n:
                # d_i d_{i+1} = 0
                upper, lower = matrix(i + 1, j), matrix(i, j)
                for row in upper:
                    for col in range(len(lower[0]) if lower and lower[0] else 0):
                        if sum(a * lower[k][col] for k, a in enumerate(row) if a) % p:
                            raise IdentityViolation(f"Koszul differential does not square to zero at ({i}, {j})")
            dim = len(cells[i][j])
            ro = rank_d(i, j)
            ri = rank_d(i + 1, j)
            slices.append(KoszulSlice(i, j, dim, ro, ri, dim - ro - ri))
    return slices


def graded_betti(ring: GradedRing, ideal: Ideal, order: TermOrder = GREVLEX) -> BettiTable:
    """b_ij = dim of the degree-j homology of K(x) ⊗ R/I in position i."""
    slices = koszul_slices(ring, ideal, order)
    for sl in slices:
        if not sl.audit():
            raise IdentityViolation(f"rank-nullity audit failed at (i, j) = ({sl.i}, {sl.j})")
    return BettiTable({(sl.i, sl.j): sl.homology for sl in slices if sl.homology}, ring.p)


def chi_from_betti(betti: BettiTable) -> ChiPolynomial:
    """sum_{i,j} (-1)^i b_ij t^j."""
    out = {}
    for (i, j), b in betti.entries.items():
        out[j] = out.get(j, 0) + (-b if i % 2 else b)
    return LaurentPoly(out)


def chi_reduced(chi: ChiPolynomial, d: int) -> ChiPolynomial:
    """chi / (1 - t)^d, checking each synthetic division leaves no remainder."""
    if d < 0:
        raise ValueError("d must be nonnegative")
    out = chi
    for k in range(d):
        out, r = out.divmod_one_minus_t()
        if r:
            raise DivisibilityError(
                f"(1 - t)^{k + 1} does not divide chi = {chi}; wrong dimension or "
                "the module lacks finite length / finite projective dimension",
                divided=k,
            )
    return out


def frobenius_betti(betti: BettiTable, q: int) -> BettiTable:
    """Betti table of F^e(M): every twist j becomes q*j, numbers unchanged."""
    if prime_power_exponent(q, betti.p) is None:
        raise NotPowerOfCharacteristicError(f"q = {q} is not a power of p = {betti.p}")
    return BettiTable({(i, q * j): b for (i, j), b in betti.entries.items()}, betti.p)


def koszul_chi(generator_degrees) -> ChiPolynomial:
    """prod (1 - t^{d_i}): chi of R/(f_1..f_r) for a homogeneous regular sequence."""
    out = LaurentPoly.one()
    for d in generator_degrees:
        if d is None or d < 1:
            raise InputError("regular-sequence generators need positive homogeneous degrees")
        out = out * LaurentPoly.one_minus_t_power(d)
    return out


@dataclass
class FactorizationReport:
    lhs: HilbertSeries  # P_{R/I}
    rhs: HilbertSeries  # chi * P_R
    chi: ChiPolynomial
    ring_series: HilbertSeries
    equal: bool
    route: str
    length: Optional[Fraction] = None
    betti: Optional[BettiTable] = None
    notes: list = field(default_factory=list)

    def to_json(self):
        out = {
            "lhs": self.lhs.to_json(),
            "rhs": self.rhs.to_json(),
            "lhs_reduced": self.lhs.reduced().to_json(),
            "chi": self.chi.to_json(),
            "ring_series": self.ring_series.to_json(),
            "equal": self.equal,
            "route": self.route,
            "length": self.length,
        }
        if self.betti is not None:
            out["betti"] = self.betti.to_json()
        return out


def verify_factorization(ring: GradedRing, ideal: Ideal, chi: ChiPolynomial = None, order: TermOrder = GREVLEX,
                         regular_sequence: bool = False, strict: bool = True) -> FactorizationReport:
    """Check P_{R/I} = chi * P_R exactly.

    chi comes from Koszul Betti numbers over a polynomial ring, from the
    Koszul closed form when ``regular_sequence`` is set, or is supplied.
    """
    betti = None
    if chi is not None:
        route = "supplied"
    elif regular_sequence:
        chi = koszul_chi(ideal.generator_degrees())
        route = "regular sequence (Koszul closed form)"
    elif ring.is_polynomial_ring:
        betti = graded_betti(ring, ideal, order)
        chi = chi_from_betti(betti)
        route = "Koszul homology"
    else:
        raise QuotientNotSupportedError(
            "over a quotient ring chi is only available for regular sequences"
        )
    lhs = hilbert_series_quotient(ring, ideal, order)
    ring_series = hilbert_series_ring(ring, order)
    rhs = ring_series * chi
    equal = lhs == rhs
    length = evaluate_at_one(lhs) if lhs.pole_order() == 0 else None
    report = FactorizationReport(lhs, rhs, chi, ring_series, equal, route, length, betti)
    if strict and not equal:
        raise IdentityViolation(f"P_M != chi * P_R for I = {ideal}: {lhs} vs {rhs}")
    return report
