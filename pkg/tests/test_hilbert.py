import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_zero_dim_ideal
from hkmult.algebra import LEX, GradedRing
from hkmult.errors import DivisibilityError, InhomogeneousError, PoleAtOneError
from hkmult.groebner import Ideal, buchberger, colength, standard_monomials
from hkmult.hilbert import (
    HilbertSeries,
    LaurentPoly,
    UnitRootFactor,
    dimension_from_series,
    evaluate_at_one,
    hilbert_series_quotient,
    hilbert_series_ring,
    monomial_hilbert_numerator,
    twist,
)
from oracles import brute_hilbert_coefficients, monomials_of_degree


def lp(*coeffs, start=0):
    return LaurentPoly.from_list(coeffs, start)


def test_ring_series_examples(a1):
    R = GradedRing.create(5, "x")
    assert hilbert_series_ring(R) == HilbertSeries(1, (1,))
    W = GradedRing.create(3, "xy", weights=(1, 2))
    s = hilbert_series_ring(W)
    assert s.numerator == 1 and s.denominator == (1, 2)
    s = hilbert_series_ring(a1)
    assert s == HilbertSeries(lp(1, 0, -1), (1, 1, 1))
    # degreewise count for degrees <= 5: dim R_n = 2n + 1
    assert s.coefficients(5) == {n: 2 * n + 1 for n in range(6)}
    rel = Ideal(a1, a1.relations)
    assert brute_hilbert_coefficients(GradedRing(a1.ambient), rel, 5) == {n: 2 * n + 1 for n in range(6)}


def test_monomial_numerator_examples():
    assert monomial_hilbert_numerator([], (1, 1)) == 1
    assert monomial_hilbert_numerator([(1, 0)], (1, 1)) == lp(1, -1)
    num = monomial_hilbert_numerator([(2, 0), (1, 1), (0, 3)], (1, 1))
    assert num == lp(1, 0, -2, 0, 1)
    assert HilbertSeries(num, (1, 1)).reduced().numerator == lp(1, 2, 1)


def test_monomial_numerator_minimalizes():
    a = monomial_hilbert_numerator([(2, 0), (1, 1), (0, 3), (3, 1), (2, 2)], (1, 1))
    assert a == lp(1, 0, -2, 0, 1)
    assert monomial_hilbert_numerator([(0, 0), (1, 1)], (1, 1)).is_zero()


def _brute_monomial_count(gens, weights, upto):
    out = {}
    for n in range(upto + 1):
        out[n] = sum(
            1 for m in monomials_of_degree(n, weights)
            if not any(all(a <= b for a, b in zip(g, m)) for g in gens)
        )
    return out


@settings(max_examples=80, deadline=None)
@given(
    st.integers(1, 4).flatmap(
        lambda n: st.tuples(
            st.just(n),
            st.lists(st.tuples(*[st.integers(0, 4)] * n), max_size=6),
            st.tuples(*[st.integers(1, 3)] * n),
        )
    )
)
def test_monomial_numerator_degreewise(data):
    n, gens, weights = data
    num = monomial_hilbert_numerator(gens, weights)
    series = HilbertSeries(num, weights)
    assert series.coefficients(10) == _brute_monomial_count(gens, weights, 10)


def test_quotient_series_examples(running, weighted):
    R, I = running
    assert hilbert_series_quotient(R, I).reduced() == HilbertSeries(lp(1, 2, 1))
    assert hilbert_series_quotient(R, I).reduced().numerator == lp(1, 2, 1)
    W, J = weighted
    assert hilbert_series_quotient(W, J).reduced().numerator == lp(1, 1)
    S = GradedRing.create(7, "xy")
    assert hilbert_series_quotient(S, Ideal.from_strings(S, ["x", "y"])).reduced().numerator == 1


def test_quotient_rejects_inhomogeneous():
    R = GradedRing.create(5, "xy")
    I = Ideal.from_strings(R, ["x^2 - y", "y^2"], homogeneous=False)
    with pytest.raises(InhomogeneousError):
        hilbert_series_quotient(R, I)


def test_twist():
    s = HilbertSeries(1, (1,))
    assert twist(s, 2).numerator == lp(0, 0, 1) and twist(s, 2).denominator == (1,)
    S = HilbertSeries(lp(1, -1, 3), (1, 2))
    assert twist(twist(S, 3), -3) == S
    assert twist(HilbertSeries(lp(1, 2, 1)), 1).numerator == lp(0, 1, 2, 1)
    neg = twist(HilbertSeries(lp(1, 2, 1)), -2)
    assert neg.numerator.low() == -2


@settings(max_examples=50, deadline=None)
@given(st.lists(st.integers(-5, 5), min_size=1, max_size=6), st.lists(st.integers(1, 3), max_size=3),
       st.integers(-6, 6))
def test_twist_shifts_coefficients(coeffs, den, k):
    s = HilbertSeries(lp(*coeffs), den)
    base = s.coefficients(20)
    shifted = twist(s, k).coefficients(20 + k)
    for n, c in base.items():
        assert shifted.get(n + k, 0) == c


def test_evaluate_at_one():
    assert evaluate_at_one(HilbertSeries(lp(1, 2, 1))) == 4
    assert evaluate_at_one(HilbertSeries(lp(1, 0, -1), (1,))) == 2
    assert evaluate_at_one(HilbertSeries(lp(1, 0, -1), (2,))) == 1
    assert evaluate_at_one(HilbertSeries(lp(1, -1), (3,))) == Fraction(1, 3)
    with pytest.raises(PoleAtOneError):
        evaluate_at_one(HilbertSeries(1, (1,)))


def test_dimension_from_series():
    assert dimension_from_series(HilbertSeries(1, (1, 2))) == 2
    assert dimension_from_series(HilbertSeries(lp(1, 0, -1), (1, 1, 1))) == 2
    assert dimension_from_series(HilbertSeries(lp(1, 2, 1))) == 0


def test_reduced_forms(a1):
    r = hilbert_series_ring(a1).reduced()
    assert r.numerator == lp(1, 1) and r.denominator == (1, 1)
    assert r == hilbert_series_ring(a1)


@pytest.mark.parametrize("s", range(1, 65))
def test_unit_root_factor(s):
    u = UnitRootFactor(s)
    assert u.product() == LaurentPoly.one_minus_t_power(s)
    assert u.g.at_one() == s


def test_laurent_division():
    f = lp(1, 0, -2, 0, 1)
    q, r = f.divmod_one_minus_t()
    assert r == 0 and q * lp(1, -1) == f
    assert f.root_multiplicity_at_one() == 2
    assert f.exact_div(lp(1, 2, 1)) == lp(1, -2, 1)
    with pytest.raises(DivisibilityError):
        lp(1, 1).exact_div(lp(1, -1))
    g = lp(3, 0, 1, start=-2)
    assert (g * lp(1, 1)).exact_div(lp(1, 1)) == g


def test_two_routes_to_length_agree():
    rng = random.Random(17)
    for k in range(25):
        ring, ideal = random_zero_dim_ideal(rng, (2, 3, 5)[k % 3], 2 + k % 2)
        gb = buchberger(ideal)
        series = hilbert_series_quotient(ring, ideal, gb=gb)
        assert evaluate_at_one(series) == colength(ring, ideal, gb=gb)
        # degreewise oracle: coefficient of t^n = number of standard monomials of degree n
        counts = {}
        for _, d in standard_monomials(gb):
            counts[d] = counts.get(d, 0) + 1
        coeffs = series.coefficients(10)
        assert all(coeffs[n] == counts.get(n, 0) for n in range(11))
        # term-order independence
        assert hilbert_series_quotient(ring, ideal, LEX) == series
        red = series.reduced()
        assert not red.denominator and red.numerator.is_polynomial()


def test_weighted_quotient_against_brute(weighted):
    W = GradedRing.create(5, "xyz", weights=(1, 2, 3))
    I = Ideal.from_strings(W, ["x^2 + y", "y^2 + x*z", "z^2"])
    series = hilbert_series_quotient(W, I)
    brute = brute_hilbert_coefficients(W, I, 12)
    assert series.coefficients(12) == brute
    assert evaluate_at_one(series) == sum(brute.values())
