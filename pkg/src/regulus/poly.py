"""Sparse multivariate polynomials with exact coefficients.

A polynomial is a map from exponent tuples to nonzero coefficients, tagged
with its coefficient ring and an ordered tuple of variable names.  Terms are
displayed and iterated in graded lexicographic order, largest first, so
printing is canonical and ``parse(str(f)) == f``.

The module also holds the triangular machinery: ``TriangularPoint`` describes
a general closed point by a triangular system (g_1, ..., g_n), each g_i monic
in its main variable t_i and free of the later variables, optionally together
with a prime for points of arithmetic schemes.  ``triangular_divide`` is the
deterministic division that every downstream criterion builds on.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidPoint, PolySyntaxError
from .rings import QQ, ZZ, Fraction, PrimeField, PrimeFieldElem, is_prime


def grlex_key(exps):
    """Sort key for graded lexicographic order (total degree, then left-to-right)."""
    return (sum(exps), exps)


def format_terms(ordered_terms, var_names, elem_str, split_sign=None, compact=False):
    """Render (exponent, coefficient) pairs, already sorted, as an expression.

    ``split_sign``, when given, maps a coefficient to (negative?, magnitude) so
    signed rings print ``x - 2`` rather than ``x + -2``; rings whose canonical
    representatives are never negative pass None.
    """
    if not ordered_terms:
        return "0"
    plus, minus = ("+", "-") if compact else (" + ", " - ")
    out = []
    for k, (exps, coeff) in enumerate(ordered_terms):
        neg, mag = split_sign(coeff) if split_sign else (False, coeff)
        factors = []
        for name, e in zip(var_names, exps):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append("%s^%d" % (name, e))
        mono = "*".join(factors)
        cs = elem_str(mag)
        if mono:
            if cs == "1":
                body = mono
            elif any(ch in cs for ch in "+- *"):
                body = "(%s)*%s" % (cs, mono)
            else:
                body = "%s*%s" % (cs, mono)
        else:
            body = cs
        if k == 0:
            out.append("-" + body if neg else body)
        else:
            out.append((minus if neg else plus) + body)
    return "".join(out)


def _signed_split(c):
    return (c < 0, -c) if c < 0 else (False, c)


class MultiPoly:
    """Sparse polynomial over a fixed ring in a fixed tuple of variables."""

    __slots__ = ("ring", "vars", "terms")

    def __init__(self, ring, vars, terms):
        self.ring = ring
        self.vars = tuple(vars)
        clean = {}
        for exps, coeff in terms.items():
            if len(exps) != len(self.vars):
                raise ValueError("exponent tuple has wrong length")
            if not ring.is_zero(coeff):
                clean[exps] = coeff
        self.terms = clean

    # ---- constructors -------------------------------------------------

    @classmethod
    def zero(cls, ring, vars):
        return cls(ring, vars, {})

    @classmethod
    def constant(cls, ring, vars, coeff):
        return cls(ring, vars, {(0,) * len(vars): coeff})

    @classmethod
    def variable(cls, ring, vars, index):
        exps = tuple(1 if k == index else 0 for k in range(len(vars)))
        return cls(ring, vars, {exps: ring.one()})

    # ---- ring structure -----------------------------------------------

    def _compat(self, other):
        if self.ring is not other.ring and self.ring != other.ring:
            raise ValueError("mixed coefficient rings")
        if self.vars != other.vars:
            raise ValueError("mixed variable tuples")

    def __add__(self, other):
        self._compat(other)
        terms = dict(self.terms)
        for exps, coeff in other.terms.items():
            cur = terms.get(exps)
            terms[exps] = coeff if cur is None else cur + coeff
        return MultiPoly(self.ring, self.vars, terms)

    def __neg__(self):
        return MultiPoly(self.ring, self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._compat(other)
        terms = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                exps = tuple(x + y for x, y in zip(ea, eb))
                prod = ca * cb
                cur = terms.get(exps)
                terms[exps] = prod if cur is None else cur + prod
        return MultiPoly(self.ring, self.vars, terms)

    def __pow__(self, n: int):
        assert n >= 0
        result = MultiPoly.constant(self.ring, self.vars, self.ring.one())
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def scale(self, coeff):
        return MultiPoly(
            self.ring, self.vars, {e: c * coeff for e, c in self.terms.items()}
        )

    def shift(self, exps):
        """Multiply by the monomial with the given exponent tuple."""
        return MultiPoly(
            self.ring,
            self.vars,
            {tuple(a + b for a, b in zip(e, exps)): c for e, c in self.terms.items()},
        )

    # ---- queries ------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self):
        return self.terms.get((0,) * len(self.vars), self.ring.zero())

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def degree_in(self, index: int) -> int:
        return max((e[index] for e in self.terms), default=0)

    def coefficient_in(self, index: int, power: int) -> "MultiPoly":
        """The coefficient of t_index^power, as a polynomial with that
        variable's exponent zeroed."""
        terms = {}
        for e, c in self.terms.items():
            if e[index] == power:
                terms[e[:index] + (0,) + e[index + 1 :]] = c
        return MultiPoly(self.ring, self.vars, terms)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda item: grlex_key(item[0]), reverse=True)

    def evaluate(self, values, ring):
        """Evaluate at the given ring elements, one per variable."""
        assert len(values) == len(self.vars)
        total = None
        powers = [{0: None} for _ in values]

        def power(i, e):
            cache = powers[i]
            if e not in cache:
                cache[e] = values[i] if e == 1 else power(i, e - 1) * values[i]
            return cache[e]

        for exps, coeff in self.sorted_terms():
            term = ring.coerce(coeff)
            for i, e in enumerate(exps):
                if e:
                    term = term * power(i, e)
            total = term if total is None else total + term
        return ring.zero() if total is None else total

    def convert(self, ring, coeff_map):
        return MultiPoly(
            ring, self.vars, {e: coeff_map(c) for e, c in self.terms.items()}
        )

    # ---- hashing and display ------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, MultiPoly)
            and self.ring == other.ring
            and self.vars == other.vars
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.vars, tuple(sorted(self.terms.items(), key=lambda kv: kv[0]))))

    def format(self, compact=False) -> str:
        split = _signed_split if self.ring in (ZZ, QQ) else None
        return format_terms(
            self.sorted_terms(), self.vars, self.ring.elem_str, split, compact
        )

    def __str__(self):
        return self.format()

    def __repr__(self):
        return "MultiPoly(%s, %s)" % (",".join(self.vars), self)


def partial_derivative(f: MultiPoly, index: int) -> MultiPoly:
    """Formal partial derivative with respect to the variable at ``index``."""
    if not 0 <= index < len(f.vars):
        raise ValueError("variable index %d out of range" % index)
    terms = {}
    for exps, coeff in f.terms.items():
        e = exps[index]
        if e == 0:
            continue
        lowered = exps[:index] + (e - 1,) + exps[index + 1 :]
        terms[lowered] = coeff * f.ring.from_int(e)
    return MultiPoly(f.ring, f.vars, terms)


# ---- expression parser ------------------------------------------------
#
# expr   := ['-'] term (('+' | '-') term)*
# term   := factor ('*' factor)*
# factor := base ('^' nat)?
# base   := integer ('/' integer)? | identifier | '(' expr ')'
#
# The optional leading '-' and the rational literal (QQ only) are permissive
# extensions so canonical output always reparses; plain integer/identifier
# input is unchanged.

_INT, _IDENT, _OP, _END = "int", "ident", "op", "end"


def _tokenize(text):
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append((_INT, text[i:j], i))
            i = j
            continue
        if ch.isalpha():
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append((_IDENT, text[i:j], i))
            i = j
            continue
        if ch in "+-*^()/":
            tokens.append((_OP, ch, i))
            i += 1
            continue
        raise PolySyntaxError("unexpected character %r" % ch, i)
    tokens.append((_END, "", n))
    return tokens


class _Parser:
    def __init__(self, text, vars, ring):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.vars = tuple(vars)
        self.ring = ring

    def peek(self):
        return self.tokens[self.pos]

    def take(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expr(self):
        negate = False
        kind, text, _ = self.peek()
        if kind == _OP and text == "-":
            self.take()
            negate = True
        result = self.term()
        if negate:
            result = -result
        while True:
            kind, text, _ = self.peek()
            if kind == _OP and text in "+-":
                self.take()
                rhs = self.term()
                result = result + rhs if text == "+" else result - rhs
            else:
                return result

    def term(self):
        result = self.factor()
        while True:
            kind, text, _ = self.peek()
            if kind == _OP and text == "*":
                self.take()
                result = result * self.factor()
            else:
                return result

    def factor(self):
        base = self.base()
        kind, text, _ = self.peek()
        if kind == _OP and text == "^":
            self.take()
            kind, text, pos = self.take()
            if kind != _INT:
                raise PolySyntaxError("expected a nonnegative integer exponent", pos)
            return base ** int(text)
        return base

    def base(self):
        kind, text, pos = self.take()
        if kind == _INT:
            nk, ntext, npos = self.peek()
            if nk == _OP and ntext == "/":
                self.take()
                dk, dtext, dpos = self.take()
                if dk != _INT:
                    raise PolySyntaxError("expected an integer denominator", dpos)
                if self.ring is not QQ:
                    raise PolySyntaxError(
                        "rational literal needs base QQ", npos
                    )
                if int(dtext) == 0:
                    raise PolySyntaxError("zero denominator", dpos)
                value = self.ring.fraction(int(text), int(dtext))
            else:
                value = self.ring.from_int(int(text))
            return MultiPoly.constant(self.ring, self.vars, value)
        if kind == _IDENT:
            if text not in self.vars:
                raise PolySyntaxError("unknown variable %r" % text, pos)
            return MultiPoly.variable(self.ring, self.vars, self.vars.index(text))
        if kind == _OP and text == "(":
            inner = self.expr()
            kind, text, pos = self.take()
            if not (kind == _OP and text == ")"):
                raise PolySyntaxError("expected ')'", pos)
            return inner
        raise PolySyntaxError(
            "expected a number, variable, or parenthesized expression", pos
        )


def parse_poly(text: str, vars, ring) -> MultiPoly:
    """Parse an expression into a polynomial over ``ring`` in ``vars``."""
    parser = _Parser(text, vars, ring)
    result = parser.expr()
    kind, toktext, pos = parser.peek()
    if kind != _END:
        raise PolySyntaxError("unexpected %r" % toktext, pos)
    return result


# ---- triangular points ------------------------------------------------


@dataclass(frozen=True)
class TriangularPoint:
    """A general closed point given by a triangular system, with an optional
    prime when the ambient scheme lives over the integers."""

    generators: tuple
    prime: int | None = None

    @property
    def vars(self):
        return self.generators[0].vars

    @property
    def ring(self):
        return self.generators[0].ring

    @property
    def n(self):
        return len(self.generators)

    def check(self):
        gens = self.generators
        if not gens:
            raise InvalidPoint("a point needs at least one generator")
        vars = gens[0].vars
        ring = gens[0].ring
        if len(gens) != len(vars):
            raise InvalidPoint(
                "expected %d generators for variables (%s), got %d"
                % (len(vars), ", ".join(vars), len(gens))
            )
        if self.prime is not None:
            if ring is not ZZ:
                raise InvalidPoint("a prime is only meaningful over ZZ")
            if not is_prime(self.prime):
                raise InvalidPoint("%d is not prime" % self.prime)
        elif ring is ZZ:
            raise InvalidPoint("points over ZZ need a prime")
        for i, g in enumerate(gens):
            if g.vars != vars or g.ring != ring:
                raise InvalidPoint("generators disagree on variables or ring")
            d = g.degree_in(i)
            if d < 1:
                raise InvalidPoint(
                    "generator %d must involve its main variable %s" % (i + 1, vars[i])
                )
            for j in range(i + 1, len(vars)):
                if g.degree_in(j) > 0:
                    raise InvalidPoint(
                        "generator %d may not involve the later variable %s"
                        % (i + 1, vars[j])
                    )
            lead = g.coefficient_in(i, d)
            if not (lead.is_constant() and lead.constant_value() == ring.one()):
                raise InvalidPoint(
                    "generator %d is not monic in its main variable %s"
                    % (i + 1, vars[i])
                )
        return self


def _divide_single(f: MultiPoly, g: MultiPoly, index: int):
    """Divide f by g with respect to g's main variable; g must be monic in it.

    Returns (quotient, remainder) with remainder degree in that variable
    strictly below g's.  Deterministic: always cancels the full top slice.
    """
    d = g.degree_in(index)
    quotient = MultiPoly.zero(f.ring, f.vars)
    rem = f
    while True:
        top = rem.degree_in(index)
        if top < d:
            return quotient, rem
        piece_terms = {
            e[:index] + (e[index] - d,) + e[index + 1 :]: c
            for e, c in rem.terms.items()
            if e[index] == top
        }
        piece = MultiPoly(f.ring, f.vars, piece_terms)
        quotient = quotient + piece
        rem = rem - piece * g


def triangular_divide(f: MultiPoly, point: TriangularPoint):
    """Write f = sum_i h_i * g_i + r with r reduced below every level degree.

    Division eliminates main variables from g_n down to g_1, so the quotients
    and the remainder are deterministic for a fixed input.
    """
    gens = point.generators
    if f.vars != gens[0].vars or f.ring != gens[0].ring:
        raise ValueError("polynomial and point disagree on variables or ring")
    quotients = [None] * len(gens)
    rem = f
    for i in reversed(range(len(gens))):
        quotients[i], rem = _divide_single(rem, gens[i], i)
    return tuple(quotients), rem


def membership_certificate(f: MultiPoly, point: TriangularPoint) -> bool:
    """Is f in the point's ideal?  Over a field that means remainder zero;
    over ZZ with a prime p it means every remainder coefficient is divisible
    by p."""
    _, rem = triangular_divide(f, point)
    if point.prime is None:
        return rem.is_zero()
    return all(c % point.prime == 0 for c in rem.terms.values())


# ---- coefficient transport --------------------------------------------


def reduce_mod(f: MultiPoly, field: PrimeField) -> MultiPoly:
    """Reduce an integer polynomial coefficientwise into GF(p)."""
    if f.ring is not ZZ:
        raise ValueError("reduce_mod expects an integer polynomial")
    return f.convert(field, field.from_int)


def lift_int(f: MultiPoly) -> MultiPoly:
    """Lift a GF(p) polynomial to ZZ using canonical representatives."""
    if not isinstance(f.ring, PrimeField):
        raise ValueError("lift_int expects a prime-field polynomial")
    return f.convert(ZZ, lambda c: c.value)


def rationalize(f: MultiPoly) -> MultiPoly:
    """View an integer polynomial over QQ."""
    if f.ring is QQ:
        return f
    if f.ring is not ZZ:
        raise ValueError("rationalize expects an integer polynomial")
    return f.convert(QQ, Fraction)
