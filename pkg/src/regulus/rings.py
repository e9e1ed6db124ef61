"""Exact coefficient arithmetic: integers, rationals, prime fields.

``Rational`` is stdlib ``fractions.Fraction``, which already maintains the
canonical-form invariants (gcd(|numerator|, denominator) = 1, denominator > 0,
zero stored as 0/1), so it is used directly as the rational coefficient type.

The ring objects below give polynomials, towers, and matrices a uniform way to
construct, test, coerce, and print coefficients.  The elements themselves
(int, Fraction, PrimeFieldElem) carry the arithmetic operators.
"""

from __future__ import annotations

from fractions import Fraction

Rational = Fraction


def is_prime(n: int) -> bool:
    """Deterministic trial division; inputs are desk scale by contract."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class PrimeFieldElem:
    """Element of GF(p), stored as its canonical representative in [0, p)."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        self.value = value % p
        self.p = p

    def __add__(self, other):
        if not isinstance(other, PrimeFieldElem):
            return NotImplemented
        assert self.p == other.p, "mixed prime fields"
        return PrimeFieldElem(self.value + other.value, self.p)

    def __sub__(self, other):
        if not isinstance(other, PrimeFieldElem):
            return NotImplemented
        assert self.p == other.p, "mixed prime fields"
        return PrimeFieldElem(self.value - other.value, self.p)

    def __mul__(self, other):
        if not isinstance(other, PrimeFieldElem):
            return NotImplemented
        assert self.p == other.p, "mixed prime fields"
        return PrimeFieldElem(self.value * other.value, self.p)

    def __neg__(self):
        return PrimeFieldElem(-self.value, self.p)

    def __pow__(self, n: int):
        assert n >= 0
        return PrimeFieldElem(pow(self.value, n, self.p), self.p)

    def inverse(self) -> "PrimeFieldElem":
        if self.value == 0:
            raise ZeroDivisionError("inverse of zero in GF(%d)" % self.p)
        return PrimeFieldElem(pow(self.value, self.p - 2, self.p), self.p)

    def __eq__(self, other):
        return (
            isinstance(other, PrimeFieldElem)
            and self.p == other.p
            and self.value == other.value
        )

    def __hash__(self):
        return hash((self.value, self.p))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return "PrimeFieldElem(%d, %d)" % (self.value, self.p)

    def __str__(self):
        return str(self.value)


class IntegerRing:
    """The ring of integers; elements are plain Python ints."""

    name = "ZZ"
    is_field = False

    def from_int(self, n: int) -> int:
        return int(n)

    def coerce(self, c) -> int:
        if isinstance(c, bool) or not isinstance(c, int):
            raise TypeError("cannot coerce %r into ZZ" % (c,))
        return c

    def zero(self) -> int:
        return 0

    def one(self) -> int:
        return 1

    def is_zero(self, a) -> bool:
        return a == 0

    def elem_str(self, a) -> str:
        return str(a)

    def __repr__(self):
        return "ZZ"


class RationalField:
    """The field of rationals; elements are ``fractions.Fraction`` values."""

    name = "QQ"
    is_field = True

    def from_int(self, n: int) -> Fraction:
        return Fraction(n)

    def fraction(self, num: int, den: int) -> Fraction:
        return Fraction(num, den)

    def coerce(self, c) -> Fraction:
        if isinstance(c, Fraction):
            return c
        if isinstance(c, int) and not isinstance(c, bool):
            return Fraction(c)
        raise TypeError("cannot coerce %r into QQ" % (c,))

    def zero(self) -> Fraction:
        return Fraction(0)

    def one(self) -> Fraction:
        return Fraction(1)

    def is_zero(self, a) -> bool:
        return a == 0

    def inv(self, a: Fraction) -> Fraction:
        return Fraction(1) / a

    def elem_str(self, a) -> str:
        return str(a)

    def __repr__(self):
        return "QQ"


class PrimeField:
    """The prime field GF(p).  Instances are cached, one per p."""

    _cache: dict = {}

    def __new__(cls, p: int):
        inst = cls._cache.get(p)
        if inst is None:
            if not is_prime(p):
                raise ValueError("%d is not prime" % p)
            inst = super().__new__(cls)
            inst.p = p
            inst.name = "GF(%d)" % p
            cls._cache[p] = inst
        return inst

    is_field = True

    def from_int(self, n: int) -> PrimeFieldElem:
        return PrimeFieldElem(n, self.p)

    def coerce(self, c) -> PrimeFieldElem:
        if isinstance(c, PrimeFieldElem):
            if c.p != self.p:
                raise TypeError("element of GF(%d) used in GF(%d)" % (c.p, self.p))
            return c
        if isinstance(c, int) and not isinstance(c, bool):
            return PrimeFieldElem(c, self.p)
        raise TypeError("cannot coerce %r into GF(%d)" % (c, self.p))

    def zero(self) -> PrimeFieldElem:
        return PrimeFieldElem(0, self.p)

    def one(self) -> PrimeFieldElem:
        return PrimeFieldElem(1, self.p)

    def is_zero(self, a) -> bool:
        return a.value == 0

    def inv(self, a: PrimeFieldElem) -> PrimeFieldElem:
        return a.inverse()

    def elem_str(self, a) -> str:
        return str(a.value)

    def __repr__(self):
        return self.name


ZZ = IntegerRing()
QQ = RationalField()
