"""Exact field elements: rationals (``fractions.Fraction``) or residues mod p."""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache

from .errors import DivisionByZero, MixedFields, ParseError

MIN_PRIME = 2 ** 20
DEFAULT_PRIME = 1_000_000_007


def _is_prime(n):
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    # deterministic for n < 3.3e24
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class Fp:
    """Element of the prime field F_p, residue stored in [0, p)."""

    __slots__ = ("value", "p")

    def __init__(self, value, p):
        self.p = p
        self.value = value % p

    def _other(self, other):
        if isinstance(other, Fp):
            if other.p != self.p:
                raise MixedFields(f"F_{self.p} vs F_{other.p}")
            return other.value
        if isinstance(other, int):
            return other % self.p
        if isinstance(other, Fraction):
            raise MixedFields("cannot mix F_p and rational scalars")
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return Fp(self.value + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return Fp(self.value - o, self.p)

    def __rsub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return Fp(o - self.value, self.p)

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return Fp(self.value * o, self.p)

    __rmul__ = __mul__

    def inverse(self):
        if self.value == 0:
            raise DivisionByZero(f"0 has no inverse in F_{self.p}")
        return Fp(pow(self.value, -1, self.p), self.p)

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        if o == 0:
            raise DivisionByZero(f"division by zero in F_{self.p}")
        return Fp(self.value * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return Fp(o, self.p) / self

    def __neg__(self):
        return Fp(-self.value, self.p)

    def __pos__(self):
        return self

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        return Fp(pow(self.value, n, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, Fp):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"Fp({self.value}, {self.p})"

    def __str__(self):
        return str(self.value)


_SCALAR_RE = re.compile(r"\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


class RationalField:
    name = "q"
    characteristic = 0

    def __call__(self, value):
        if isinstance(value, Fp):
            raise MixedFields("F_p element given to the rational field")
        if isinstance(value, str):
            return self.parse(value)
        return Fraction(value)

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def contains(self, value):
        return isinstance(value, (Fraction, int))

    def parse(self, text):
        m = _SCALAR_RE.match(text)
        if not m:
            raise ParseError(f"bad scalar {text!r}", expected="integer or a/b")
        den = int(m.group(2)) if m.group(2) else 1
        if den == 0:
            raise DivisionByZero(f"zero denominator in {text!r}")
        return Fraction(int(m.group(1)), den)

    def random(self, rng, bound=10 ** 4, nonzero=False):
        while True:
            v = Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
            if v or not nonzero:
                return v

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


class PrimeField:
    def __init__(self, p=DEFAULT_PRIME):
        if p <= MIN_PRIME or not _is_prime(p):
            raise ValueError(f"p must be a prime > 2^20, got {p}")
        self.p = p
        self.characteristic = p
        self.name = f"fp:{p}"

    def __call__(self, value):
        if isinstance(value, Fp):
            if value.p != self.p:
                raise MixedFields(f"F_{value.p} element given to F_{self.p}")
            return value
        if isinstance(value, str):
            return self.parse(value)
        if isinstance(value, Fraction):
            return Fp(value.numerator, self.p) / Fp(value.denominator, self.p)
        return Fp(value, self.p)

    @property
    def zero(self):
        return Fp(0, self.p)

    @property
    def one(self):
        return Fp(1, self.p)

    def contains(self, value):
        return isinstance(value, int) or (isinstance(value, Fp) and value.p == self.p)

    def parse(self, text):
        m = _SCALAR_RE.match(text)
        if not m:
            raise ParseError(f"bad scalar {text!r}", expected="integer or a/b")
        num = Fp(int(m.group(1)), self.p)
        if m.group(2):
            return num / Fp(int(m.group(2)), self.p)
        return num

    def random(self, rng, bound=None, nonzero=False):
        lo = 1 if nonzero else 0
        return Fp(rng.randint(lo, self.p - 1), self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return f"GF({self.p})"


QQ = RationalField()


@lru_cache(maxsize=None)
def GF(p=DEFAULT_PRIME):
    return PrimeField(p)


def field_from_mode(mode):
    """``"q"`` or ``"fp:<prime>"`` (``"fp"`` alone uses the default prime)."""
    if mode in ("q", "Q", "qq"):
        return QQ
    if mode.startswith("fp"):
        _, _, p = mode.partition(":")
        return GF(int(p) if p else DEFAULT_PRIME)
    raise ValueError(f"unknown field mode {mode!r}")


def field_of(*values):
    """The field a collection of scalars lives in; plain ints default to QQ."""
    found = None
    for v in values:
        if isinstance(v, Fp):
            if found is not None and found != ("p", v.p):
                raise MixedFields("scalars from different fields")
            found = ("p", v.p)
        elif isinstance(v, Fraction):
            if found is not None and found != ("q",):
                raise MixedFields("cannot mix F_p and rational scalars")
            found = ("q",)
    if found is None or found == ("q",):
        return QQ
    return GF(found[1])


def unify(values):
    """Coerce a flat list of scalars (ints allowed) into one field."""
    values = list(values)
    K = field_of(*values)
    return [K(v) for v in values]


def format_scalar(a):
    if isinstance(a, Fp):
        return str(a.value)
    a = Fraction(a)
    if a.denominator == 1:
        return str(a.numerator)
    return f"{a.numerator}/{a.denominator}"


def _check(a, b):
    fa, fb = field_of(a), field_of(b)
    if isinstance(a, Fp) != isinstance(b, Fp) and not (isinstance(a, int) or isinstance(b, int)):
        raise MixedFields("cannot mix F_p and rational scalars")
    if fa != fb and not (isinstance(a, int) or isinstance(b, int)):
        raise MixedFields("scalars from different fields")


def scalar_add(a, b):
    _check(a, b)
    return a + b


def scalar_sub(a, b):
    _check(a, b)
    return a - b


def scalar_mul(a, b):
    _check(a, b)
    return a * b


def scalar_div(a, b):
    _check(a, b)
    if b == 0:
        raise DivisionByZero("division by zero")
    if isinstance(a, int) and isinstance(b, int):
        return Fraction(a, b)
    return a / b


def inverse(a):
    if a == 0:
        raise DivisionByZero("zero has no inverse")
    if isinstance(a, Fp):
        return a.inverse()
    return 1 / Fraction(a)


_OPS = {"add": scalar_add, "sub": scalar_sub, "mul": scalar_mul, "div": scalar_div}


def scalar_arith(op, a, b):
    """Dispatch to scalar_add / scalar_sub / scalar_mul / scalar_div by name."""
    try:
        fn = _OPS[op]
    except KeyError:
        raise ValueError(f"unknown scalar operation {op!r}") from None
    return fn(a, b)
