"""Recursive-descent parser for polynomial expressions and problem files.

Expression grammar::

    expr    := ws term (ws ("+"|"-") ws term)* ws
    term    := coeff ("*" factor)* | factor ("*" factor)*
    factor  := ident ("^" nat)?
    coeff   := nat
    ident   := letter (letter|digit|"_")*
    nat     := digit+

A leading "-" is allowed on the first term.  Coefficients are nonnegative
integers reduced mod p; "-" only ever acts as a connective or unary sign.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .algebra import GradedRing, Polynomial, PolynomialRing, TermOrder, mono_mul
from .errors import InhomogeneousError, InputError, ParseError, UnknownVariableError


class _Scanner:
    def __init__(self, text, line=1, column=1):
        self.text = text
        self.pos = 0
        self.line = line
        self.column = column

    def error(self, message, cls=ParseError, pos=None):
        pos = self.pos if pos is None else pos
        return cls(message, line=self.line, column=self.column + pos)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def eat(self, ch):
        if self.peek() == ch:
            self.pos += 1
            return True
        return False

    def nat(self):
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos] in "0123456789":
            self.pos += 1
        if start == self.pos:
            raise self.error("expected a nonnegative integer")
        return int(self.text[start:self.pos])

    def ident(self):
        self.skip_ws()
        start = self.pos
        t = self.text
        if self.pos < len(t) and t[self.pos].isascii() and t[self.pos].isalpha():
            self.pos += 1
            while self.pos < len(t) and t[self.pos].isascii() and (t[self.pos].isalnum() or t[self.pos] == "_"):
                self.pos += 1
            return t[start:self.pos], start
        raise self.error("expected a variable name")


def parse_polynomial(text: str, ring: PolynomialRing, line: int = 1, column: int = 1) -> Polynomial:
    """Parse ``text`` into a polynomial of ``ring``; errors carry line/column."""
    if isinstance(ring, GradedRing):
        ring = ring.ambient
    sc = _Scanner(text, line, column)
    index = {v: i for i, v in enumerate(ring.variables)}
    n = ring.nvars
    p = ring.p
    acc = {}

    def factor():
        name, start = sc.ident()
        if name not in index:
            raise sc.error(f"unknown variable {name!r}", UnknownVariableError, start)
        e = 1
        if sc.eat("^"):
            e = sc.nat()
        m = [0] * n
        m[index[name]] = e
        return tuple(m)

    def term():
        coeff = 1
        mono = (0,) * n
        ch = sc.peek()
        if ch.isdigit():
            coeff = sc.nat()
        elif ch.isascii() and ch.isalpha():
            mono = factor()
        else:
            raise sc.error("expected a coefficient or variable" if ch else "unexpected end of expression")
        while sc.eat("*"):
            mono = mono_mul(mono, factor())
        return coeff, mono

    sign = -1 if sc.eat("-") else 1
    while True:
        c, m = term()
        acc[m] = (acc.get(m, 0) + sign * c) % p
        ch = sc.peek()
        if ch == "+":
            sc.pos += 1
            sign = 1
        elif ch == "-":
            sc.pos += 1
            sign = -1
        elif ch == "":
            break
        else:
            raise sc.error(f"unexpected character {ch!r}")
    return Polynomial(ring, acc)


# -- problem files ----------------------------------------------------------

KEYS = (
    "p", "vars", "weights", "quotient", "gens",
    "order", "e_max", "degree_budget", "regular_sequence",
)
_KEY_RE = re.compile(r"(?:^|(?<=\s))(" + "|".join(KEYS) + r")\s*[=:]")
_ANY_KEY_RE = re.compile(r"^\s*([A-Za-z_][A-Za-z0-9_]*)\s*[=:]")

DEFAULT_OPTIONS = {"order": "grevlex", "e_max": 2, "degree_budget": 120, "regular_sequence": False}


@dataclass
class Problem:
    ring: GradedRing
    ideal: "object"
    options: dict = field(default_factory=dict)
    warnings: list = field(default_factory=list)

    def echo(self):
        return {
            "p": self.ring.p,
            "vars": list(self.ring.variables),
            "weights": list(self.ring.weights),
            "quotient": [str(f) for f in self.ring.relations],
            "gens": [str(f) for f in self.ideal.generators],
            "options": {k: (v.value if isinstance(v, TermOrder) else v) for k, v in sorted(self.options.items())},
            "warnings": list(self.warnings),
        }


def _split_list(value, line, col):
    """Split a comma list, yielding (item, column) pairs."""
    out = []
    pos = 0
    for chunk in value.split(","):
        stripped = chunk.strip()
        lead = len(chunk) - len(chunk.lstrip())
        if stripped:
            out.append((stripped, col + pos + lead))
        pos += len(chunk) + 1
    return out


def _int_value(key, value, line, col, minimum):
    try:
        v = int(value.strip())
    except ValueError:
        raise ParseError(f"{key} must be an integer, got {value.strip()!r}", line, col) from None
    if v < minimum:
        raise InputError(f"{key} must be >= {minimum}", line=line, column=col)
    return v


def _bool_value(key, value, line, col):
    v = value.strip().lower()
    if v in ("1", "true", "yes", "on"):
        return True
    if v in ("0", "false", "no", "off"):
        return False
    raise ParseError(f"{key} must be a boolean, got {value.strip()!r}", line, col)


def _scan_entries(text):
    entries = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        matches = list(_KEY_RE.finditer(line))
        if not matches:
            m = _ANY_KEY_RE.match(line)
            if m:
                raise ParseError(f"unknown key {m.group(1)!r}", lineno, m.start(1) + 1)
            raise ParseError("expected 'key = value'", lineno, len(line) - len(line.lstrip()) + 1)
        lead = line[: matches[0].start()]
        if lead.strip():
            raise ParseError(f"unexpected text {lead.strip()!r}", lineno, len(lead) - len(lead.lstrip()) + 1)
        for k, m in enumerate(matches):
            end = matches[k + 1].start() if k + 1 < len(matches) else len(line)
            key = m.group(1)
            if key in entries:
                raise ParseError(f"duplicate key {key!r}", lineno, m.start(1) + 1)
            entries[key] = (line[m.end():end], lineno, m.end() + 1)
    return entries


def parse_problem(text: str, strict_homogeneity: bool = True) -> Problem:
    """Parse the key-value problem format into (ring, ideal, options).

    Keys: p, vars, weights, quotient, gens, order, e_max, degree_budget,
    regular_sequence.  Several ``key=value`` pairs may share one line.
    """
    from .groebner import Ideal

    entries = _scan_entries(text)
    for key in ("p", "vars", "gens"):
        if key not in entries:
            raise ParseError(f"missing required key {key!r}")

    value, line, col = entries["p"]
    p = _int_value("p", value, line, col, 0)
    try:
        from .algebra import PrimeField

        field_ = PrimeField(p)
    except InputError as exc:
        exc.details.update(line=line, column=col)
        raise

    value, line, col = entries["vars"]
    names = [v for v, _ in _split_list(value, line, col)]
    for v, c in _split_list(value, line, col):
        if not re.fullmatch(r"[A-Za-z][A-Za-z0-9_]*", v):
            raise ParseError(f"bad variable name {v!r}", line, c)
    if not names:
        raise ParseError("vars is empty", line, col)
    if len(set(names)) != len(names):
        raise InputError("variable names must be distinct", line=line, column=col)

    weights = [1] * len(names)
    if "weights" in entries:
        value, line, col = entries["weights"]
        items = _split_list(value, line, col)
        weights = [_int_value("weight", w, line, c, 1) for w, c in items]
        if len(weights) != len(names):
            raise InputError(
                f"{len(weights)} weights given for {len(names)} variables", line=line, column=col
            )
    ambient = PolynomialRing(field_, tuple(names), tuple(weights))

    warnings = []

    def polys(key):
        if key not in entries:
            return []
        value, line, col = entries[key]
        out = []
        for expr, c in _split_list(value, line, col):
            f = parse_polynomial(expr, ambient, line, c)
            if f.is_zero():
                if key == "quotient":
                    raise InputError("quotient relation reduces to 0 mod p", line=line, column=c)
                warnings.append(f"generator {expr!r} reduces to 0 mod {p}; dropped")
                continue
            if not f.is_homogeneous():
                msg = f"{key} entry {expr!r} is not homogeneous"
                if strict_homogeneity or key == "quotient":
                    raise InhomogeneousError(msg, line=line, column=c)
                warnings.append(msg)
            out.append(f)
        return out

    relations = polys("quotient")
    gens = polys("gens")
    if not gens:
        raise InputError("ideal has no nonzero generators")
    ring = GradedRing(ambient, tuple(relations))

    options = dict(DEFAULT_OPTIONS)
    if "order" in entries:
        value, line, col = entries["order"]
        try:
            options["order"] = TermOrder.parse(value)
        except InputError as exc:
            exc.details.update(line=line, column=col)
            raise
    else:
        options["order"] = TermOrder.GREVLEX
    if "e_max" in entries:
        options["e_max"] = _int_value("e_max", *entries["e_max"], 1)
    if "degree_budget" in entries:
        options["degree_budget"] = _int_value("degree_budget", *entries["degree_budget"], 1)
    if "regular_sequence" in entries:
        options["regular_sequence"] = _bool_value("regular_sequence", *entries["regular_sequence"])

    ideal = Ideal(ring, tuple(gens), homogeneous=strict_homogeneity or all(g.is_homogeneous() for g in gens))
    return Problem(ring, ideal, options, warnings)
