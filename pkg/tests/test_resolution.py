import random

import pytest

from conftest import random_zero_dim_ideal
from hkmult.algebra import GradedRing
from hkmult.errors import DivisibilityError, NotPowerOfCharacteristicError, QuotientNotSupportedError
from hkmult.groebner import Ideal, colength
from hkmult.hilbert import HilbertSeries, LaurentPoly, evaluate_at_one, hilbert_series_ring
from hkmult.hk import bracket_power
from hkmult.resolution import (
    BettiTable,
    chi_from_betti,
    chi_reduced,
    frobenius_betti,
    graded_betti,
    koszul_chi,
    koszul_slices,
    rank_mod_p,
    verify_factorization,
)
from oracles import koszul_betti_pattern, poly_coeffs_product


def lp(*coeffs):
    return LaurentPoly.from_list(coeffs)


def maximal(p, n):
    R = GradedRing.create(p, "xyzw"[:n])
    return R, Ideal.from_strings(R, list("xyzw"[:n]))


def test_maximal_ideal_two_vars():
    R, m = maximal(5, 2)
    b = graded_betti(R, m)
    assert b.entries == {(0, 0): 1, (1, 1): 2, (2, 2): 1}
    assert b.projective_dimension == 2


def test_running_example_table(running):
    R, I = running
    b = graded_betti(R, I)
    assert b[0, 0] == 1
    assert b.row(1) == [2, 2, 3]
    assert b.row(2) == [3, 4]


def test_weighted_regular_sequence_table(weighted):
    W, J = weighted
    b = graded_betti(W, J)
    assert b.entries == {(0, 0): 1, (1, 2): 2, (2, 4): 1}


def test_graded_betti_refuses_quotients(a1):
    with pytest.raises(QuotientNotSupportedError):
        graded_betti(a1, Ideal.from_strings(a1, ["x", "y"]))


def test_chi_examples(running):
    R, m = maximal(3, 2)
    assert chi_from_betti(graded_betti(R, m)) == lp(1, -2, 1)
    R, I = running
    assert chi_from_betti(graded_betti(R, I)) == lp(1, 0, -2, 0, 1)
    S = GradedRing.create(3, "xy")
    chi = chi_from_betti(graded_betti(S, Ideal.from_strings(S, ["x^2 + x*y", "y^3"])))
    assert chi == LaurentPoly(poly_coeffs_product({0: 1, 2: -1}, {0: 1, 3: -1}))


def test_chi_reduced_examples():
    assert chi_reduced(lp(1, 0, -2, 0, 1), 2) == lp(1, 2, 1)
    assert chi_reduced(lp(1, 0, -2, 0, 1), 2).at_one() == 4
    assert chi_reduced(lp(1, -2, 1), 2) == 1
    assert chi_reduced(lp(1, 0, -1), 1) == lp(1, 1)
    with pytest.raises(DivisibilityError):
        chi_reduced(lp(1, 0, -1), 2)


def test_frobenius_betti_examples(running):
    R, m = maximal(2, 2)
    b = graded_betti(R, m)
    assert frobenius_betti(b, 2).entries == {(0, 0): 1, (1, 2): 2, (2, 4): 1}
    assert frobenius_betti(b, 1) == b
    with pytest.raises(NotPowerOfCharacteristicError):
        frobenius_betti(b, 3)
    R, I = running
    chi2 = chi_from_betti(frobenius_betti(graded_betti(R, I), 2))
    assert chi2 == LaurentPoly({0: 1, 4: -2, 8: 1})


def test_frobenius_betti_matches_direct_computation(running):
    # the q-scaled table is the Betti table of R/I^[q] (minimality survives Frobenius)
    R, I = running
    for q in (2, 4):
        assert graded_betti(R, bracket_power(I, q)) == frobenius_betti(graded_betti(R, I), q)
    S = GradedRing.create(3, "xyz")
    J = Ideal.from_strings(S, ["x^2 + y*z", "y^2 + 2*x*z", "z^2", "x*y"])
    assert graded_betti(S, bracket_power(J, 3)) == frobenius_betti(graded_betti(S, J), 3)


def test_koszul_chi_examples(a1, weighted):
    assert koszul_chi([1] * 3) == lp(1, -3, 3, -1)
    assert koszul_chi([2, 2]) == lp(1, 0, -2, 0, 1)
    W, J = weighted
    assert koszul_chi([2, 2]) == chi_from_betti(graded_betti(W, J))
    chi = koszul_chi([1, 1])
    prod = hilbert_series_ring(a1) * chi
    assert prod.reduced() == HilbertSeries(lp(1, 1))
    assert evaluate_at_one(prod) == 2 == colength(a1, Ideal.from_strings(a1, ["x", "y"]))


def test_verify_factorization_examples(running, a1):
    R, m = maximal(7, 2)
    rep = verify_factorization(R, m)
    assert rep.equal and rep.lhs.reduced().numerator == 1
    R, I = running
    rep = verify_factorization(R, I)
    assert rep.equal
    assert rep.lhs.reduced().numerator == lp(1, 2, 1)
    assert rep.rhs == HilbertSeries(lp(1, 0, -2, 0, 1), (1, 1))
    rep = verify_factorization(a1, Ideal.from_strings(a1, ["x", "y"]), regular_sequence=True)
    assert rep.equal and rep.length == 2
    with pytest.raises(QuotientNotSupportedError):
        verify_factorization(a1, Ideal.from_strings(a1, ["x", "y"]))


def test_wrong_chi_is_detected(running):
    R, I = running
    rep = verify_factorization(R, I, chi=lp(1, -2, 1), strict=False)
    assert not rep.equal


def test_random_invariants():
    rng = random.Random(23)
    for k in range(20):
        ring, ideal = random_zero_dim_ideal(rng, (2, 3, 5)[k % 3], 2 + k % 2)
        b = graded_betti(ring, ideal)
        chi = chi_from_betti(b)
        assert b[0, 0] == 1
        assert b.projective_dimension <= ring.nvars
        assert chi.at_one() == 0
        assert chi_reduced(chi, ring.nvars).at_one() == colength(ring, ideal)
        for q in (ring.p, ring.p**2):
            assert chi_from_betti(frobenius_betti(b, q)) == chi.substitute_power(q)
        assert verify_factorization(ring, ideal).equal
        assert all(s.audit() for s in koszul_slices(ring, ideal, check_complex=True))


@pytest.mark.parametrize(
    "gens,degs",
    [(["x^2", "y^3"], [2, 3]), (["x", "y^2", "z^3"], [1, 2, 3]), (["x*y", "x^2 + y^2", "z"], [2, 2, 1])],
)
def test_regular_sequence_betti_is_koszul(gens, degs):
    R = GradedRing.create(5, "xyz")
    if len(gens) == 2:
        R = GradedRing.create(5, "xy")
    b = graded_betti(R, Ideal.from_strings(R, gens))
    assert b.entries == koszul_betti_pattern(degs)


def test_rank_nullity_audit(running):
    R, I = running
    slices = koszul_slices(R, I, check_complex=True)
    assert slices and all(s.audit() for s in slices)
    assert all(s.homology >= 0 for s in slices)


def test_rank_mod_p():
    assert rank_mod_p([[1, 1], [1, 1]], 2) == 1
    assert rank_mod_p([[1, 2], [2, 1]], 3) == 1
    assert rank_mod_p([[1, 2], [2, 1]], 5) == 2
    assert rank_mod_p([], 3) == 0


def test_betti_table_serialization():
    b = BettiTable({(1, 2): 2, (0, 0): 1, (2, 3): 0}, 3)
    assert b.to_json() == [{"i": 0, "j": 0, "b": 1}, {"i": 1, "j": 2, "b": 2}]
