"""Exact Hilbert series, Betti numbers and Frobenius lengths over GF(p)."""

from .algebra import GREVLEX, LEX, GradedRing, Polynomial, PolynomialRing, PrimeField, TermOrder
from .groebner import GroebnerBasis, Ideal, buchberger, colength, normal_form, standard_monomials
from .hilbert import HilbertSeries, LaurentPoly, evaluate_at_one, hilbert_series_quotient, hilbert_series_ring
from .hk import bracket_power, ehk_estimate, frobenius_length, length_identity_check
from .resolution import BettiTable, chi_from_betti, chi_reduced, graded_betti, koszul_chi

__version__ = "0.1.0"
