import random
import sys
from pathlib import Path

import pytest
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from hkmult import GradedRing, Ideal, PolynomialRing, Polynomial  # noqa: E402
from hkmult.groebner import buchberger, is_zero_dimensional  # noqa: E402
from oracles import monomials_of_degree  # noqa: E402


@pytest.fixture
def running():
    """GF(2)[x,y] with I = (x^2, xy, y^3)."""
    ring = GradedRing.create(2, "xy")
    return ring, Ideal.from_strings(ring, ["x^2", "x*y", "y^3"])


@pytest.fixture
def a1():
    """The A1 surface GF(3)[x,y,z]/(xy - z^2)."""
    return GradedRing.create(3, "xyz", relations=["x*y - z^2"])


@pytest.fixture
def weighted():
    """GF(3)[x,y], deg y = 2, I = (x^2, y)."""
    ring = GradedRing.create(3, "xy", weights=(1, 2))
    return ring, Ideal.from_strings(ring, ["x^2", "y"])


def polynomials(ring: PolynomialRing, max_terms=5, max_exp=3):
    mono = st.tuples(*[st.integers(0, max_exp)] * ring.nvars)
    coeff = st.integers(0, ring.p - 1)
    return st.dictionaries(mono, coeff, max_size=max_terms).map(lambda d: Polynomial(ring, d))


def random_form(rng, ring, degree):
    """Random homogeneous polynomial of the given weighted degree (maybe zero)."""
    monos = monomials_of_degree(degree, ring.weights)
    k = rng.randint(1, len(monos))
    return Polynomial(ring.ambient, {m: rng.randrange(1, ring.p) for m in rng.sample(monos, k)})


def random_zero_dim_ideal(rng, p, nvars, max_degree=4, min_degree=1):
    """Random homogeneous zero-dimensional ideal over GF(p)[x_1..x_n]."""
    ring = GradedRing.create(p, "xyzw"[:nvars])
    while True:
        ngens = rng.randint(nvars, nvars + 2)
        gens = [random_form(rng, ring, rng.randint(min_degree, max_degree)) for _ in range(ngens)]
        gens = [g for g in gens if not g.is_zero()]
        if not gens:
            continue
        ideal = Ideal(ring, tuple(gens))
        if is_zero_dimensional(buchberger(ideal)):
            return ring, ideal


def random_suite(seed, count, nvars, primes=(2, 3, 5)):
    rng = random.Random(seed)
    # every fourth ideal may contain linear forms; the rest start in degree 2
    return [
        random_zero_dim_ideal(rng, primes[k % len(primes)], nvars, min_degree=1 if k % 4 == 0 else 2)
        for k in range(count)
    ]
