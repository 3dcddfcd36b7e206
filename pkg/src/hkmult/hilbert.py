"""Hilbert series as exact rational functions numerator / prod(1 - t^s).

Numerators are integer Laurent polynomials with arbitrary-size
coefficients.  Series of quotients R/I come from the initial ideal of a
Gröbner basis, via a pivot recursion on monomial ideals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .algebra import GREVLEX, GradedRing, TermOrder, mono_divides, weighted_degree
from .errors import DivisibilityError, InhomogeneousError, PoleAtOneError
from .groebner import Ideal, buchberger, _minimal_monomials


class LaurentPoly:
    """Integer Laurent polynomial in t, stored as {exponent: coefficient}."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Mapping[int, int] = None):
        self._c = {int(k): int(v) for k, v in (coeffs or {}).items() if v}

    @classmethod
    def from_list(cls, coeffs: Iterable[int], start: int = 0) -> "LaurentPoly":
        return cls({start + i: c for i, c in enumerate(coeffs)})

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> "LaurentPoly":
        return cls({k: c})

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls({0: 1})

    @classmethod
    def one_minus_t_power(cls, s: int) -> "LaurentPoly":
        return cls({0: 1, s: -1})

    def items(self):
        return sorted(self._c.items())

    def coeff(self, k: int) -> int:
        return self._c.get(k, 0)

    def is_zero(self) -> bool:
        return not self._c

    def low(self) -> int:
        return min(self._c)

    def high(self) -> int:
        return max(self._c)

    def is_polynomial(self) -> bool:
        return not self._c or self.low() >= 0

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly({0: other})
        return isinstance(other, LaurentPoly) and self._c == other._c

    def __hash__(self):
        return hash(frozenset(self._c.items()))

    def __add__(self, other):
        out = dict(self._c)
        for k, v in _lp(other)._c.items():
            out[k] = out.get(k, 0) + v
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({k: -v for k, v in self._c.items()})

    def __sub__(self, other):
        return self + (-_lp(other))

    def __rsub__(self, other):
        return _lp(other) - self

    def __mul__(self, other):
        other = _lp(other)
        out = {}
        for a, x in self._c.items():
            for b, y in other._c.items():
                out[a + b] = out.get(a + b, 0) + x * y
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = LaurentPoly.one()
        for _ in range(n):
            out = out * self
        return out

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by t^k."""
        return LaurentPoly({e + k: v for e, v in self._c.items()})

    def substitute_power(self, q: int) -> "LaurentPoly":
        """f(t) -> f(t^q)."""
        return LaurentPoly({e * q: v for e, v in self._c.items()})

    def __call__(self, t):
        if isinstance(t, int) and t == 1:
            return sum(self._c.values())
        return sum(Fraction(t) ** e * v for e, v in self._c.items())

    def at_one(self) -> int:
        return sum(self._c.values())

    def divmod_one_minus_t(self):
        """Synthetic division by (1 - t): returns (quotient, remainder) with
        self = (1 - t) * quotient + remainder and remainder a constant."""
        if not self._c:
            return LaurentPoly(), 0
        lo, hi = self.low(), self.high()
        quot = {}
        running = 0
        for k in range(lo, hi):
            running += self._c.get(k, 0)
            quot[k] = running
        return LaurentPoly(quot), running + self._c.get(hi, 0)

    def root_multiplicity_at_one(self) -> int:
        if not self._c:
            raise ValueError("zero polynomial vanishes to infinite order")
        k = 0
        f = self
        while True:
            q, r = f.divmod_one_minus_t()
            if r:
                return k
            f = q
            k += 1

    def exact_div(self, divisor: "LaurentPoly") -> "LaurentPoly":
        """Exact quotient in Z[t, 1/t]; raises DivisibilityError otherwise."""
        divisor = _lp(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        rem = dict(self._c)
        dh = divisor.high()
        lead = divisor._c[dh]
        floor = (self.low() - divisor.low()) if rem else 0
        quot = {}
        while rem:
            h = max(rem)
            k = h - dh
            c = rem[h]
            if k < floor or c % lead:
                raise DivisibilityError(f"{self} is not divisible by {divisor}")
            qc = c // lead
            quot[k] = qc
            for e, v in divisor._c.items():
                nv = rem.get(e + k, 0) - qc * v
                if nv:
                    rem[e + k] = nv
                else:
                    rem.pop(e + k, None)
        return LaurentPoly(quot)

    def to_json(self):
        return [[k, v] for k, v in self.items()]

    def __repr__(self):
        return f"LaurentPoly({format_laurent(self)!r})"

    def __str__(self):
        return format_laurent(self)


def _lp(x) -> LaurentPoly:
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, int):
        return LaurentPoly({0: x})
    raise TypeError(f"cannot use {type(x).__name__} as a Laurent polynomial")


def format_laurent(f: LaurentPoly) -> str:
    if f.is_zero():
        return "0"
    out = []
    for e, c in f.items():
        mono = "" if e == 0 else ("t" if e == 1 else f"t^{e}")
        mag = abs(c)
        body = str(mag) if not mono else (mono if mag == 1 else f"{mag}*{mono}")
        sign = "-" if c < 0 else "+"
        if not out:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


T = LaurentPoly.monomial(1)


@dataclass(frozen=True)
class UnitRootFactor:
    """1 - t^s = (1 - t) * g(t) with g = 1 + t + ... + t^(s-1)."""

    s: int

    def __post_init__(self):
        if self.s < 1:
            raise ValueError("s must be positive")

    @property
    def g(self) -> LaurentPoly:
        return LaurentPoly({k: 1 for k in range(self.s)})

    def product(self) -> LaurentPoly:
        return LaurentPoly.one_minus_t_power(1) * self.g


class HilbertSeries:
    """numerator(t) / prod_i (1 - t^{s_i}); equality is rational-function equality."""

    __slots__ = ("numerator", "denominator")

    def __init__(self, numerator, denominator=()):
        self.numerator = _lp(numerator)
        den = tuple(sorted(int(s) for s in denominator))
        if any(s < 1 for s in den):
            raise ValueError("denominator exponents must be positive")
        self.denominator = den

    @property
    def denominator_exponents(self):
        return self.denominator

    def denominator_poly(self) -> LaurentPoly:
        out = LaurentPoly.one()
        for s in self.denominator:
            out = out * LaurentPoly.one_minus_t_power(s)
        return out

    def __eq__(self, other):
        if not isinstance(other, HilbertSeries):
            return NotImplemented
        return self.numerator * other.denominator_poly() == other.numerator * self.denominator_poly()

    def __hash__(self):
        raise TypeError("HilbertSeries is unhashable")

    def __mul__(self, other):
        if isinstance(other, HilbertSeries):
            return HilbertSeries(self.numerator * other.numerator, self.denominator + other.denominator)
        return HilbertSeries(self.numerator * _lp(other), self.denominator)

    __rmul__ = __mul__

    def pole_order(self) -> int:
        if self.numerator.is_zero():
            return 0
        return max(0, len(self.denominator) - self.numerator.root_multiplicity_at_one())

    def reduced(self) -> "HilbertSeries":
        """Cancel whole factors (1 - t^s) dividing the numerator; if no pole at
        t = 1 remains, return the honest Laurent polynomial (empty denominator)."""
        if self.numerator.is_zero():
            return HilbertSeries(LaurentPoly(), ())
        if self.pole_order() == 0:
            num = self.numerator
            for s in self.denominator:
                num = num.exact_div(LaurentPoly.one_minus_t_power(s))
            return HilbertSeries(num, ())
        num = self.numerator
        den = list(self.denominator)
        changed = True
        while changed:
            changed = False
            for s in sorted(set(den)):
                try:
                    num = num.exact_div(LaurentPoly.one_minus_t_power(s))
                except DivisibilityError:
                    continue
                den.remove(s)
                changed = True
                break
        return HilbertSeries(num, den)

    def is_polynomial(self) -> bool:
        return not self.reduced().denominator

    def coefficients(self, upto: int) -> dict:
        """Power-series coefficients {n: c_n} for min(low, 0) <= n <= upto."""
        lo = min(self.numerator.low(), 0) if not self.numerator.is_zero() else 0
        coeffs = {k: self.numerator.coeff(k) for k in range(lo, upto + 1)}
        for s in self.denominator:
            # multiply by 1/(1 - t^s) = sum t^{ks}
            for k in range(lo + s, upto + 1):
                coeffs[k] += coeffs[k - s]
        return coeffs

    def to_json(self):
        return {"numerator": self.numerator.to_json(), "denominator": list(self.denominator)}

    def __str__(self):
        if not self.denominator:
            return str(self.numerator)
        den = "*".join(f"(1 - t^{s})" if s > 1 else "(1 - t)" for s in self.denominator)
        return f"({self.numerator}) / ({den})"

    def __repr__(self):
        return f"HilbertSeries({self})"


def twist(series: HilbertSeries, k: int) -> HilbertSeries:
    """Series of M(-k): multiply by t^k."""
    return HilbertSeries(series.numerator.shift(k), series.denominator)


def evaluate_at_one(series: HilbertSeries) -> Fraction:
    """Value at t = 1 after cancelling every (1 - t) factor; errors on a pole."""
    num = series.numerator
    if num.is_zero():
        return Fraction(0)
    order = series.pole_order()
    if order > 0:
        raise PoleAtOneError(f"series has a pole of order {order} at t = 1", pole_order=order)
    # 1 - t^s = (1 - t) g_s with g_s(1) = s
    for _ in series.denominator:
        num, r = num.divmod_one_minus_t()
        assert r == 0
    value = Fraction(num.at_one())
    for s in series.denominator:
        value /= UnitRootFactor(s).g.at_one()
    return value


def dimension_from_series(series: HilbertSeries) -> int:
    """Pole order at t = 1: the Krull dimension of the module."""
    return series.pole_order()


# -- monomial ideals --------------------------------------------------------

def monomial_hilbert_numerator(leading_terms, weights) -> LaurentPoly:
    """N(t) with P_{S/(leading_terms)} = N(t) / prod(1 - t^{w_i}).

    Pivot recursion: N(I) = N(I + (x^k)) + t^{deg x^k} N(I : x^k), with
    x^k chosen from the variable occurring in most non-pure-power generators.
    """
    weights = tuple(weights)
    gens = tuple(_minimal_monomials(tuple(m) for m in leading_terms))
    return _hilbert_num(gens, weights, {})


def _hilbert_num(gens, w, memo):
    if not gens:
        return LaurentPoly.one()
    if any(not any(m) for m in gens):
        return LaurentPoly()
    hit = memo.get(gens)
    if hit is not None:
        return hit
    n = len(w)
    mixed = [m for m in gens if sum(1 for e in m if e) > 1]
    if not mixed or _pairwise_coprime(gens):
        out = LaurentPoly.one()
        for m in gens:
            out = out * LaurentPoly.one_minus_t_power(weighted_degree(m, w))
        memo[gens] = out
        return out
    counts = [sum(1 for m in mixed if m[i]) for i in range(n)]
    v = max(range(n), key=lambda i: (counts[i], -i))
    exps = sorted(m[v] for m in mixed if m[v])
    k = exps[(len(exps) - 1) // 2]
    pivot = tuple(k if i == v else 0 for i in range(n))
    plus = tuple(_minimal_monomials([m for m in gens if not mono_divides(pivot, m)] + [pivot]))
    colon = tuple(
        _minimal_monomials(tuple(max(e - k, 0) if i == v else e for i, e in enumerate(m)) for m in gens)
    )
    out = _hilbert_num(plus, w, memo) + _hilbert_num(colon, w, memo).shift(w[v] * k)
    memo[gens] = out
    return out


def _pairwise_coprime(gens):
    seen = [0] * len(gens[0])
    for m in gens:
        for i, e in enumerate(m):
            if e:
                if seen[i]:
                    return False
                seen[i] = 1
    return True


def hilbert_series_ring(ring: GradedRing, order: TermOrder = GREVLEX) -> HilbertSeries:
    """P_R(t) with denominator exponents equal to the variable weights."""
    if ring.is_polynomial_ring:
        return HilbertSeries(LaurentPoly.one(), ring.weights)
    gb = buchberger(Ideal(ring, ring.relations), order)
    return HilbertSeries(monomial_hilbert_numerator(gb.leading_monomials, ring.weights), ring.weights)


def hilbert_series_quotient(ring: GradedRing, ideal: Ideal, order: TermOrder = GREVLEX, degree_budget=None, gb=None) -> HilbertSeries:
    """P_{R/I}(t) from the initial ideal of relations + I."""
    for g in ideal.generators:
        if not g.is_homogeneous():
            raise InhomogeneousError(f"generator {g} is not homogeneous")
    if gb is None:
        gb = buchberger(ideal, order, degree_budget)
    return HilbertSeries(monomial_hilbert_numerator(gb.leading_monomials, ring.weights), ring.weights)
