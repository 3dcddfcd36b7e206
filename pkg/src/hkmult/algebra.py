"""Polynomials over GF(p) in weighted-graded polynomial rings.

Monomials are dense exponent tuples, one slot per variable.  A polynomial
is an immutable map from monomials to nonzero residues mod p, exposed as a
term list sorted descending in its term order.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from math import isqrt
from typing import Callable, Iterable, Mapping, Sequence

from .errors import InputError, NotPrimeError, RingMismatchError

MAX_EXPONENT = 2**63 - 1

Monomial = tuple


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for d in range(3, isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


def prime_power_exponent(q: int, p: int):
    """Return e with q == p**e, or None if q is not a power of p."""
    if q < 1:
        return None
    e = 0
    while q % p == 0:
        q //= p
        e += 1
    return e if q == 1 else None


class PrimeField:
    """The prime field GF(p), 2 <= p < 2**31."""

    __slots__ = ("p",)

    def __init__(self, p: int):
        if not isinstance(p, int) or isinstance(p, bool):
            raise InputError(f"characteristic must be an integer, got {p!r}")
        if not 2 <= p < 2**31:
            raise NotPrimeError(f"characteristic {p} outside 2 <= p < 2^31")
        if not is_prime(p):
            raise NotPrimeError(f"{p} is not prime")
        self.p = p

    def __call__(self, a: int) -> int:
        return a % self.p

    def inv(self, a: int) -> int:
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero in GF(%d)" % self.p)
        return pow(a, -1, self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return f"GF({self.p})"


class TermOrder(enum.Enum):
    """Monomial orders; grevlex compares weighted degree first."""

    GREVLEX = "grevlex"
    LEX = "lex"

    def key(self, weights: Sequence[int]) -> Callable[[Monomial], tuple]:
        """Sort key: a larger key means a larger monomial."""
        if self is TermOrder.LEX:
            return tuple
        w = tuple(weights)

        def grevlex(m):
            return (sum(a * b for a, b in zip(w, m)), tuple(-e for e in reversed(m)))

        return grevlex

    @classmethod
    def parse(cls, name) -> "TermOrder":
        if isinstance(name, TermOrder):
            return name
        try:
            return cls(str(name).strip().lower())
        except ValueError:
            raise InputError(f"unknown term order {name!r}; use grevlex or lex") from None


GREVLEX = TermOrder.GREVLEX
LEX = TermOrder.LEX


# -- monomial helpers -------------------------------------------------------

def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    out = tuple(x + y for x, y in zip(a, b))
    if any(e > MAX_EXPONENT for e in out):
        raise OverflowError("exponent overflow")
    return out


def mono_divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_div(b: Monomial, a: Monomial) -> Monomial:
    return tuple(y - x for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_scale(a: Monomial, q: int) -> Monomial:
    out = tuple(e * q for e in a)
    if any(e > MAX_EXPONENT for e in out):
        raise OverflowError(f"exponent overflow raising monomial to power {q}")
    return out


def weighted_degree(m: Monomial, weights: Sequence[int]) -> int:
    return sum(w * e for w, e in zip(weights, m))


# -- rings ------------------------------------------------------------------

@dataclass(frozen=True)
class PolynomialRing:
    """GF(p)[x_1..x_n] with deg(x_i) = weights[i]."""

    field: PrimeField
    variables: tuple
    weights: tuple

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        object.__setattr__(self, "weights", tuple(self.weights))
        if not self.variables:
            raise InputError("ring needs at least one variable")
        if len(set(self.variables)) != len(self.variables):
            raise InputError("variable names must be distinct")
        if len(self.weights) != len(self.variables):
            raise InputError(
                f"{len(self.weights)} weights given for {len(self.variables)} variables"
            )
        for w in self.weights:
            if not isinstance(w, int) or w < 1:
                raise InputError(f"weights must be positive integers, got {w!r}")

    @classmethod
    def create(cls, p: int, variables, weights=None) -> "PolynomialRing":
        if isinstance(variables, str):
            variables = [v.strip() for v in variables.split(",")] if "," in variables else list(variables)
        variables = tuple(variables)
        weights = tuple(weights) if weights is not None else (1,) * len(variables)
        return cls(PrimeField(p), variables, weights)

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def degree(self, m: Monomial) -> int:
        return weighted_degree(m, self.weights)

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, c: int) -> "Polynomial":
        return Polynomial(self, {(0,) * self.nvars: c})

    def monomial(self, exponents, coeff: int = 1) -> "Polynomial":
        exponents = tuple(exponents)
        if len(exponents) != self.nvars or any(e < 0 for e in exponents):
            raise InputError(f"bad exponent vector {exponents!r}")
        return Polynomial(self, {exponents: coeff})

    def var(self, name: str) -> "Polynomial":
        try:
            i = self.variables.index(name)
        except ValueError:
            raise InputError(f"unknown variable {name!r}") from None
        e = [0] * self.nvars
        e[i] = 1
        return self.monomial(e)

    def gens(self):
        return [self.var(v) for v in self.variables]

    def parse(self, text: str) -> "Polynomial":
        from .parser import parse_polynomial

        return parse_polynomial(text, self)


@dataclass(frozen=True)
class GradedRing:
    """A weighted polynomial ring modulo homogeneous relations (possibly none)."""

    ambient: PolynomialRing
    relations: tuple = ()

    def __post_init__(self):
        rels = tuple(self.relations)
        object.__setattr__(self, "relations", rels)
        for f in rels:
            if f.ring != self.ambient:
                raise RingMismatchError("quotient relation lives in another ring")
            if f.is_zero():
                raise InputError("quotient relations must be nonzero")
            if not f.is_homogeneous():
                raise InputError(f"quotient relation {f} is not homogeneous")

    @classmethod
    def create(cls, p: int, variables, weights=None, relations=()) -> "GradedRing":
        amb = PolynomialRing.create(p, variables, weights)
        rels = [amb.parse(r) if isinstance(r, str) else r for r in relations]
        return cls(amb, tuple(rels))

    field = property(lambda self: self.ambient.field)
    variables = property(lambda self: self.ambient.variables)
    weights = property(lambda self: self.ambient.weights)
    quotient_relations = property(lambda self: self.relations)
    p = property(lambda self: self.ambient.p)
    nvars = property(lambda self: self.ambient.nvars)

    @property
    def is_polynomial_ring(self) -> bool:
        return not self.relations

    def parse(self, text: str) -> "Polynomial":
        return self.ambient.parse(text)

    def __str__(self):
        base = f"GF({self.p})[{','.join(self.variables)}]"
        if any(w != 1 for w in self.weights):
            base += " weights " + ",".join(map(str, self.weights))
        if self.relations:
            base += "/(" + ", ".join(map(str, self.relations)) + ")"
        return base


# -- polynomials ------------------------------------------------------------

class Polynomial:
    """Immutable polynomial over GF(p).

    ``terms`` is the tuple of (coefficient, monomial) pairs, strictly
    descending in ``order``; the zero polynomial has no terms.
    """

    __slots__ = ("ring", "order", "_coeffs", "_terms")

    def __init__(self, ring: PolynomialRing, coeffs: Mapping[Monomial, int], order: TermOrder = GREVLEX):
        p = ring.p
        n = ring.nvars
        clean = {}
        for m, c in coeffs.items():
            c %= p
            if c:
                if len(m) != n:
                    raise InputError(f"monomial {m!r} has wrong length for {n} variables")
                clean[tuple(m)] = c
        self.ring = ring
        self.order = order
        self._coeffs = clean
        key = order.key(ring.weights)
        self._terms = tuple((clean[m], m) for m in sorted(clean, key=key, reverse=True))

    @property
    def terms(self):
        return self._terms

    def as_dict(self) -> dict:
        return dict(self._coeffs)

    def is_zero(self) -> bool:
        return not self._coeffs

    def __bool__(self):
        return bool(self._coeffs)

    def __len__(self):
        return len(self._coeffs)

    def coefficient(self, m: Monomial) -> int:
        return self._coeffs.get(tuple(m), 0)

    def with_order(self, order: TermOrder) -> "Polynomial":
        if order is self.order:
            return self
        return Polynomial(self.ring, self._coeffs, order)

    def leading_term(self):
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        return self._terms[0]

    def leading_monomial(self) -> Monomial:
        return self.leading_term()[1]

    def monic(self) -> "Polynomial":
        c = self.leading_term()[0]
        if c == 1:
            return self
        inv = self.ring.field.inv(c)
        return Polynomial(self.ring, {m: a * inv for m, a in self._coeffs.items()}, self.order)

    # arithmetic -----------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingMismatchError("polynomials from different rings")
            return other
        if isinstance(other, int) and not isinstance(other, bool):
            return self.ring.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._coeffs)
        for m, c in other._coeffs.items():
            out[m] = out.get(m, 0) + c
        return Polynomial(self.ring, out, self.order)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, {m: -c for m, c in self._coeffs.items()}, self.order)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.ring.p
        out = {}
        for m1, c1 in self._coeffs.items():
            for m2, c2 in other._coeffs.items():
                m = mono_mul(m1, m2)
                out[m] = (out.get(m, 0) + c1 * c2) % p
        return Polynomial(self.ring, out, self.order)

    __rmul__ = __mul__

    def __pow__(self, q):
        if q == 0:
            return self.ring.one().with_order(self.order)
        return poly_q_power(self, q)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self._coeffs == other._coeffs
        if isinstance(other, int) and not isinstance(other, bool):
            return self == self.ring.constant(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.ring, frozenset(self._coeffs.items())))

    # grading --------------------------------------------------------------

    def degrees(self) -> set:
        return {self.ring.degree(m) for m in self._coeffs}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def homogeneous_degree(self):
        """Common weighted degree of all terms, or None if inhomogeneous (or zero)."""
        ds = self.degrees()
        return ds.pop() if len(ds) == 1 else None

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)!r})"


def format_monomial(m: Monomial, names) -> str:
    parts = []
    for name, e in zip(names, m):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_polynomial(f: Polynomial) -> str:
    if f.is_zero():
        return "0"
    names = f.ring.variables
    out = []
    for c, m in f.terms:
        mono = format_monomial(m, names)
        if not mono:
            out.append(str(c))
        elif c == 1:
            out.append(mono)
        else:
            out.append(f"{c}*{mono}")
    return " + ".join(out)


def poly_arith(f: Polynomial, g: Polynomial, kind: str) -> Polynomial:
    """Dispatch for add, sub, mul and neg (``g`` ignored for neg)."""
    if kind == "add":
        return f + g
    if kind == "sub":
        return f - g
    if kind == "mul":
        return f * g
    if kind == "neg":
        return -f
    raise ValueError(f"unknown operation {kind!r}")


def poly_q_power(f: Polynomial, q: int) -> Polynomial:
    """f**q.  Powers of p use the term-wise Frobenius map c*m -> c^q*m^q."""
    if not isinstance(q, int) or isinstance(q, bool) or q < 1:
        raise ValueError(f"exponent must be a positive integer, got {q!r}")
    p = f.ring.p
    if prime_power_exponent(q, p) is not None:
        return Polynomial(
            f.ring, {mono_scale(m, q): pow(c, q, p) for m, c in f.as_dict().items()}, f.order
        )
    result = f.ring.one().with_order(f.order)
    base = f
    while q:
        if q & 1:
            result = result * base
        q >>= 1
        if q:
            base = base * base
    return result


def is_homogeneous(f: Polynomial, ring=None):
    """Return (True, degree) when every term of f shares one weighted degree.

    The zero polynomial is homogeneous of every degree; reported as (True, None).
    """
    if f.is_zero():
        return True, None
    d = f.homogeneous_degree()
    return (d is not None), d


def sum_polys(ring: PolynomialRing, polys: Iterable[Polynomial]) -> Polynomial:
    out = ring.zero()
    for f in polys:
        out = out + f
    return out
