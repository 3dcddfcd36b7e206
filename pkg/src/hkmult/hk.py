"""Frobenius bracket powers and Hilbert-Kunz lengths.

The q-th power map is additive in characteristic p, so for q = p^e the
q-th powers of any generating set of I generate I^[q].
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .algebra import GREVLEX, GradedRing, TermOrder, poly_q_power, prime_power_exponent
from .errors import IdentityViolation, NotPowerOfCharacteristicError, NotZeroDimensionalError, ResourceCapError
from .groebner import Ideal, buchberger, colength
from .hilbert import (
    HilbertSeries,
    LaurentPoly,
    UnitRootFactor,
    dimension_from_series,
    evaluate_at_one,
    hilbert_series_quotient,
    hilbert_series_ring,
)
from .resolution import chi_from_betti, chi_reduced, frobenius_betti, graded_betti, koszul_chi

log = logging.getLogger(__name__)

DEFAULT_DEGREE_BUDGET = 120
DEFAULT_E_MAX = 2


def bracket_power(ideal: Ideal, q: int) -> Ideal:
    """I^[q], generated by the q-th powers of the generators of I."""
    p = ideal.ring.p
    if prime_power_exponent(q, p) is None:
        raise NotPowerOfCharacteristicError(f"q = {q} is not a power of p = {p}")
    if q == 1:
        return ideal
    return Ideal(ideal.ring, tuple(poly_q_power(g, q) for g in ideal.generators), ideal.homogeneous)


def ring_dimension(ring: GradedRing, order: TermOrder = GREVLEX) -> int:
    return dimension_from_series(hilbert_series_ring(ring, order))


def _check_budget(ideal: Ideal, q: int, budget: Optional[int]):
    if budget is None:
        return
    top = max(ideal.max_degree() * q, max((max(f.degrees()) for f in ideal.ring.relations), default=0))
    if top > budget:
        raise ResourceCapError(
            f"bracket power generators reach degree {top}, over the degree budget {budget}",
            degree=top,
            budget=budget,
        )


def frobenius_length(ring: GradedRing, ideal: Ideal, e: int, order: TermOrder = GREVLEX,
                     degree_budget: Optional[int] = DEFAULT_DEGREE_BUDGET) -> int:
    """λ(R/I^[p^e])."""
    if e < 0:
        raise ValueError("e must be nonnegative")
    q = ring.p**e
    _check_budget(ideal, q, degree_budget)
    return colength(ring, bracket_power(ideal, q), order, degree_budget)


def regular_sequence_consistent(ring: GradedRing, ideal: Ideal, order: TermOrder = GREVLEX,
                                length: Optional[int] = None) -> bool:
    """Operational test of a regular-sequence claim: the number of generators
    equals dim R and λ(R/I) matches the Koszul prediction [koszul_chi * P_R](1)."""
    degs = ideal.generator_degrees()
    if any(d is None for d in degs) or len(degs) != ring_dimension(ring, order):
        return False
    predicted = hilbert_series_ring(ring, order) * koszul_chi(degs)
    if predicted.pole_order():
        return False
    if length is None:
        try:
            length = colength(ring, ideal, order)
        except NotZeroDimensionalError:
            return False
    return evaluate_at_one(predicted) == length


@dataclass
class FrobeniusReport:
    e: int
    q: int
    length: int  # λ(R/I)
    length_bracket: int  # λ(R/I^[q])
    predicted: int  # q^d λ(R/I)
    d: int
    hypothesis: str
    certified: bool

    @property
    def equal(self) -> bool:
        return self.length_bracket == self.predicted

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.length_bracket, self.q**self.d)

    def to_json(self):
        return {
            "e": self.e,
            "q": self.q,
            "d": self.d,
            "length": self.length,
            "length_bracket": self.length_bracket,
            "predicted": self.predicted,
            "equal": self.equal,
            "ratio": self.ratio,
            "hypothesis": self.hypothesis,
            "certified": self.certified,
        }


def finite_pd_hypothesis(ring: GradedRing, ideal: Ideal, regular_sequence: bool, order=GREVLEX, length=None):
    """(description, certified) for the finite projective dimension hypothesis."""
    if ring.is_polynomial_ring:
        return "regular ambient ring", True
    if regular_sequence:
        if regular_sequence_consistent(ring, ideal, order, length):
            return "regular sequence (Koszul length check passed)", True
        return "regular-sequence claim refuted by Koszul length check", False
    return "not certified", False


def length_identity_check(ring: GradedRing, ideal: Ideal, e: int, order: TermOrder = GREVLEX,
                          regular_sequence: bool = False,
                          degree_budget: Optional[int] = DEFAULT_DEGREE_BUDGET) -> FrobeniusReport:
    """Compare λ(R/I^[q]) against q^d λ(R/I) with d = dim R."""
    d = ring_dimension(ring, order)
    q = ring.p**e
    lam = colength(ring, ideal, order, degree_budget)
    lam_q = frobenius_length(ring, ideal, e, order, degree_budget)
    hyp, certified = finite_pd_hypothesis(ring, ideal, regular_sequence, order, lam)
    report = FrobeniusReport(e, q, lam, lam_q, q**d * lam, d, hyp, certified)
    if certified and not report.equal:
        log.error(
            "length identity FAILED under a certified hypothesis (%s): λ(R/I^[%d]) = %d but q^d λ = %d",
            hyp, q, lam_q, report.predicted,
        )
    return report


@dataclass
class EhkEstimate:
    ratios: list  # [(e, Fraction)]
    colength: int
    d: int
    lengths: list = field(default_factory=list)  # [(e, λ(R/I^[q]))]
    partial: bool = False
    stop_reason: Optional[str] = None

    @property
    def last_ratio(self) -> Optional[Fraction]:
        return self.ratios[-1][1] if self.ratios else None

    @property
    def monotonicity(self) -> str:
        vals = [r for _, r in self.ratios]
        if len(vals) < 2:
            return "too few terms"
        if all(a == b for a, b in zip(vals, vals[1:])):
            return "constant"
        if all(a <= b for a, b in zip(vals, vals[1:])):
            return "nondecreasing"
        if all(a >= b for a, b in zip(vals, vals[1:])):
            return "nonincreasing"
        return "not monotone"

    @property
    def conjecture_part1_satisfied_so_far(self) -> bool:
        return all(r >= self.colength for _, r in self.ratios)

    def to_json(self):
        return {
            "ratios": [{"e": e, "ratio": r} for e, r in self.ratios],
            "lengths": [{"e": e, "length": n} for e, n in self.lengths],
            "colength": self.colength,
            "d": self.d,
            "last_ratio": self.last_ratio,
            "monotonicity": self.monotonicity,
            "conjecture_part1_satisfied_so_far": self.conjecture_part1_satisfied_so_far,
            "partial": self.partial,
            "stop_reason": self.stop_reason,
        }


def ehk_estimate(ring: GradedRing, ideal: Ideal, e_max: int = DEFAULT_E_MAX, order: TermOrder = GREVLEX,
                 degree_budget: Optional[int] = DEFAULT_DEGREE_BUDGET) -> EhkEstimate:
    """Exact ratios λ(R/I^[q]) / q^d for e = 1..e_max; no extrapolation.

    Stops early, keeping the completed prefix, if the degree budget is hit.
    """
    if e_max < 1:
        raise ValueError("e_max must be at least 1")
    d = ring_dimension(ring, order)
    lam = colength(ring, ideal, order, degree_budget)
    est = EhkEstimate([], lam, d)
    for e in range(1, e_max + 1):
        q = ring.p**e
        try:
            n = frobenius_length(ring, ideal, e, order, degree_budget)
        except ResourceCapError as exc:
            est.partial = True
            est.stop_reason = exc.message
            break
        est.lengths.append((e, n))
        est.ratios.append((e, Fraction(n, q**d)))
    return est


def conjecture_report(ring: GradedRing, ideal: Ideal, e_max: int = DEFAULT_E_MAX, order: TermOrder = GREVLEX,
                      regular_sequence: bool = False,
                      degree_budget: Optional[int] = DEFAULT_DEGREE_BUDGET) -> dict:
    """Finite-stage evidence for the two-part conjecture comparing e_HK(I, R) with λ(R/I).

    Part (1) compares each ratio with λ(R/I).  Part (2) is reported as exact
    equality λ(R/I^[q]) = q^d λ(R/I) when finite projective dimension is
    certified.  No statement about the limit itself is made.
    """
    est = ehk_estimate(ring, ideal, e_max, order, degree_budget)
    hyp, certified = finite_pd_hypothesis(ring, ideal, regular_sequence, order, est.colength)
    exact = [n == ring.p ** (e * est.d) * est.colength for e, n in est.lengths]
    if certified:
        if all(exact) and exact:
            part2 = "part (2) verified exactly at each tested e"
        else:
            part2 = "part (2) FAILED at some tested e despite finite projective dimension"
    else:
        part2 = "part (2) not applicable: finite projective dimension not certified"
    part1 = (
        "part (1) direction holds at each tested e"
        if est.conjecture_part1_satisfied_so_far
        else "part (1) direction violated at some tested e"
    )
    return {
        "estimate": est,
        "hypothesis": hyp,
        "finite_pd_certified": certified,
        "exact_equality_by_e": [{"e": e, "equal": x} for (e, _), x in zip(est.lengths, exact)],
        "part1": part1,
        "part2": part2,
        "caveat": "finite-stage evidence only; no limit is computed or claimed",
    }


@dataclass
class SeriesIdentityReport:
    q: int
    d: int
    length: int
    direct: LaurentPoly  # P_{F^e(R/I)} from the bracket power
    via_chi: LaurentPoly  # chi~(t^q) (1+...+t^{q-1})^d p(t)/g(t)
    chi: LaurentPoly
    chi_tilde: LaurentPoly
    chi_frobenius: LaurentPoly  # chi of the Frobenius Betti table
    value_direct: Fraction
    value_via_chi: Fraction

    @property
    def equal(self) -> bool:
        return self.direct == self.via_chi

    @property
    def predicted(self) -> int:
        return self.q**self.d * self.length

    def to_json(self):
        return {
            "q": self.q,
            "d": self.d,
            "length": self.length,
            "direct": self.direct.to_json(),
            "via_chi": self.via_chi.to_json(),
            "chi": self.chi.to_json(),
            "chi_tilde": self.chi_tilde.to_json(),
            "chi_frobenius": self.chi_frobenius.to_json(),
            "value_direct": self.value_direct,
            "value_via_chi": self.value_via_chi,
            "predicted": self.predicted,
            "equal": self.equal,
        }


def frobenius_series_identity(ring: GradedRing, ideal: Ideal, e: int, order: TermOrder = GREVLEX,
                              degree_budget: Optional[int] = DEFAULT_DEGREE_BUDGET,
                              strict: bool = True) -> SeriesIdentityReport:
    """P_{F^e(R/I)} computed two ways over a polynomial ring.

    (a) the Hilbert series of R/I^[q] from its own Gröbner basis;
    (b) chi~(t^q) * (1 + t + ... + t^(q-1))^d * p(t) / g(t), where
        P_R = p / ((1-t)^d g) and chi = chi~ (1-t)^d comes from the Koszul
        Betti table of R/I after scaling its twists by q.
    Both reduce to Laurent polynomials; both evaluate to q^d λ(R/I) at t = 1.
    """
    q = ring.p**e
    betti = graded_betti(ring, ideal, order)
    chi = chi_from_betti(betti)
    d = ring_dimension(ring, order)
    chi_t = chi_reduced(chi, d)
    chi_frob = chi_from_betti(frobenius_betti(betti, q))
    if chi_frob != chi.substitute_power(q):
        raise IdentityViolation("chi of the Frobenius Betti table differs from chi(t^q)")

    ring_series = hilbert_series_ring(ring, order)
    # P_R = p / prod(1 - t^s) = p / ((1-t)^d g), g = prod g_s
    p_num = ring_series.numerator
    g = LaurentPoly.one()
    for s in ring_series.denominator:
        g = g * UnitRootFactor(s).g
    extra = len(ring_series.denominator) - d
    for _ in range(extra):
        p_num, r = p_num.divmod_one_minus_t()
        if r:
            raise IdentityViolation("ring series numerator lost its (1 - t) content")
    geometric = UnitRootFactor(q).g
    via_chi = (chi_t.substitute_power(q) * geometric**d * p_num).exact_div(g)

    _check_budget(ideal, q, degree_budget)
    direct_series = hilbert_series_quotient(ring, bracket_power(ideal, q), order, degree_budget)
    direct = direct_series.reduced()
    if direct.denominator:
        raise IdentityViolation("R/I^[q] does not have finite length")
    lam = colength(ring, ideal, order, degree_budget)
    report = SeriesIdentityReport(
        q, d, lam, direct.numerator, via_chi, chi, chi_t, chi_frob,
        evaluate_at_one(direct), evaluate_at_one(HilbertSeries(via_chi)),
    )
    if strict and not (report.equal and report.value_direct == report.predicted == report.value_via_chi):
        raise IdentityViolation(f"Frobenius series identity failed for I = {ideal}, q = {q}")
    return report
